#include "kproj/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace kproj {

namespace {

KVec generic_probe(Field f, int n, int salt) {
    KVec v(n, Scalar::zero(f));
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < real_dim(f); ++c)
            v[i].c[c] = 1.0 / (1.0 + i + c + salt) + 0.01 * (4 * i + c + salt);
    }
    return v;
}

}  // namespace

const char* proximality_name(Proximality p) {
    switch (p) {
        case Proximality::NotProximal: return "not_proximal";
        case Proximality::ProximalOnly: return "proximal_only";
        case Proximality::BiProximal: return "bi_proximal";
    }
    return "?";
}

ProjPoint dominant_eigenline(const KMatrix& m) {
    if (!m.square()) throw validation_error("dominant_eigenline needs a square matrix");
    ProjPoint v = canonicalize(generic_probe(m.field, m.rows, 1));
    double last_step = 1;
    for (int it = 0; it < tol::eigenline_max_iter; ++it) {
        const ProjPoint w = canonicalize(m * v.rep);
        last_step = proj_distance(w, v);
        v = w;
        if (last_step <= tol::eigenline_step) return v;
    }
    throw numeric_error("power iteration did not converge (last step " + std::to_string(last_step) + ")");
}

ProximalClass classify(const ProjMap& phi) {
    ProximalClass out;
    out.sigma = sigma_spectrum(phi.mat);
    const auto& s = out.sigma.sigmas;
    const int n = static_cast<int>(s.size());
    if (n < 2) throw validation_error("classify needs dimension >= 1");
    out.gap_top = s[n - 1] / s[n - 2];
    out.gap_bottom = s[1] / s[0];
    const bool top = out.gap_top > 1.0 + tol::prox_gap;
    const bool bottom = out.gap_bottom > 1.0 + tol::prox_gap;
    out.variant = top ? (bottom ? Proximality::BiProximal : Proximality::ProximalOnly)
                      : Proximality::NotProximal;
    if (out.variant == Proximality::BiProximal) {
        out.x_plus = dominant_eigenline(phi.mat);
        out.x_minus = dominant_eigenline(inverse(phi.mat));
    }
    return out;
}

std::vector<ProjPoint> iterate_orbit(const ProjMap& phi, const ProjPoint& p, int n) {
    std::vector<ProjPoint> orbit{p};
    orbit.reserve(n + 1);
    for (int k = 0; k < n; ++k) orbit.push_back(apply(phi, orbit.back()));
    return orbit;
}

EndClass rank_one_limit(const ProjMap& phi) {
    const ProximalClass cls = classify(phi);
    if (cls.variant != Proximality::BiProximal)
        throw validation_error("rank_one_limit needs a bi-proximal map");

    const Field f = phi.field();
    const int n = phi.mat.rows;
    const KVec probe_img = generic_probe(f, n, 2);
    const KVec probe_ker = generic_probe(f, n, 3);

    auto features = [&](const KMatrix& m) {
        struct F {
            ProjPoint image;
            DualPoint kernel;
            double defect;
        };
        F out{canonicalize(m * probe_img), canonicalize_dual(conj_transpose(m) * probe_ker), 0};
        // Rank-one defect: what survives after removing the dominant column space.
        KMatrix rest = m;
        const KVec x = out.image.rep;
        for (int c = 0; c < n; ++c) {
            KVec col = rest.column(c);
            const Scalar coef = inner(x, col);
            for (int r = 0; r < n; ++r) rest.at(r, c) = rest.at(r, c) - x[r] * coef;
        }
        out.defect = frobenius_norm(rest) / std::max(frobenius_norm(m), 1e-300);
        return out;
    };

    KMatrix m = phi.mat * (1.0 / operator_norm(phi.mat));
    auto prev = features(m);
    double last_distance = 1;
    for (int k = 0; k < tol::rank_one_max_squarings; ++k) {
        KMatrix next = m * m;
        const double nn = operator_norm(next);
        if (nn <= 1e-300) throw numeric_error("normalized powers collapsed to zero");
        next = next * (1.0 / nn);
        last_distance = end_distance(EndClass{m}, EndClass{next});
        const auto cur = features(next);
        const bool feature_converged = proj_distance(cur.image, prev.image) <= 1e-11 &&
                                       proj_distance(cur.kernel, prev.kernel) <= 1e-11 &&
                                       cur.defect <= 1e-11;
        m = next;
        prev = cur;
        if (last_distance <= tol::rank_one_conv || feature_converged) return EndClass{m};
    }
    throw numeric_error("rank_one_limit did not converge; gap " + std::to_string(cls.gap_top) +
                        ", last distance " + std::to_string(last_distance));
}

// --- standard form ---

Containment StandardForm::contains_std(const KVec& chart_z) const {
    KVec rep{Scalar::one(domain.field())};
    rep.insert(rep.end(), chart_z.begin(), chart_z.end());
    return domain.contains(apply(to_original, canonicalize(rep)));
}

double StandardForm::defining_std(const KVec& chart_z) const {
    KVec rep{Scalar::one(domain.field())};
    rep.insert(rep.end(), chart_z.begin(), chart_z.end());
    return domain.defining_value(apply(to_original, canonicalize(rep)));
}

double StandardForm::graph_probe(const Scalar& x, const KVec& zvec) const {
    if (std::abs(real_part(x)) > 1e-10)
        throw validation_error("graph_probe: x must be purely imaginary");
    const int d = domain.dim();
    if (static_cast<int>(zvec.size()) != d - 1) throw validation_error("graph_probe: bad zvec size");
    // Bisection on the raw defining sign; a banded membership test would bias
    // every probed graph value by the band width.
    auto value = [&](double rho) {
        KVec z(d, Scalar::zero(x.field));
        z[0] = x + Scalar(x.field, rho);
        for (int i = 0; i + 1 < d; ++i) z[i + 1] = zvec[i];
        return defining_std(z);
    };
    double hi = 4.0 * u_radius, lo = -4.0 * u_radius;
    if (value(hi) >= 0 || value(lo) < 0)
        throw numeric_error("graph_probe: the boundary graph is not bracketed at this point");
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

StandardForm standard_form(const Domain& domain, const ProjMap& phi) {
    const ProximalClass cls = classify(phi);
    if (cls.variant != Proximality::BiProximal)
        throw validation_error("standard_form needs a bi-proximal map");
    const ProjPoint xp = *cls.x_plus, xm = *cls.x_minus;
    if (domain.contains(xp, 1e-6) != Containment::Boundary ||
        domain.contains(xm, 1e-6) != Containment::Boundary)
        throw validation_error("standard_form: fixed lines are not on the boundary");

    const Field f = domain.field();
    const int d = domain.dim();
    const DualPoint fp = domain.tangent_hyperplane(domain.project_to_boundary(xp)).hyperplane;
    const DualPoint fm = domain.tangent_hyperplane(domain.project_to_boundary(xm)).hyperplane;
    if (proj_distance(fp, fm) <= 1e-6)
        throw numeric_error("standard_form: tangent hyperplanes at x+ and x- coincide");

    // Basis v1 = x+, v2 = x-, rest spanning ker f+ n ker f-.
    const auto full = orthonormal_extend(f, {fp.rep, fm.rep}, d + 1);
    std::vector<KVec> cols{xp.rep, xm.rep};
    cols.insert(cols.end(), full.begin() + 2, full.end());
    ProjMap T(KMatrix::from_columns(f, cols));

    // Shear making T_0 stay at K_P x K^{d-1} and orienting Re(z_1) inward.
    {
        const KVec fp_std = conj_transpose(T.mat) * fp.rep;  // functional of f+ in new coordinates
        const Scalar c1 = fp_std[1];
        if (abs(c1) <= 1e-12) throw numeric_error("standard_form: degenerate tangent in new coordinates");
        // q c1 with q = conj(c1)/|c1| maps the tangent slab onto K_P; the sign
        // makes the defining function decrease along +Re(z_1).
        Scalar q = conj(c1) * (1.0 / abs(c1));
        KVec probe(d + 1, Scalar::zero(f));
        probe[0] = Scalar::one(f);
        probe[1] = inverse(q) * Scalar(f, 1e-4);
        const double side = domain.defining_value(apply(T, canonicalize(probe)));
        if (side > 0) q = -q;
        KMatrix shear = KMatrix::identity(f, d + 1);
        shear.at(1, 1) = q;
        T = T * ProjMap(inverse(shear));
    }

    StandardForm sf(domain);
    sf.to_original = T;
    sf.to_standard = inverse(T);
    sf.phi_std = sf.to_standard.mat * phi.mat * T.mat;

    double off = 0;
    for (int r = 0; r < d + 1; ++r)
        for (int c = 0; c < d + 1; ++c) {
            const bool block = (r == 0 && c == 0) || (r == 1 && c == 1) || (r >= 2 && c >= 2);
            if (!block) off += abs2(sf.phi_std.at(r, c));
        }
    sf.off_block_residual = std::sqrt(off) / std::max(frobenius_norm(sf.phi_std), 1e-300);
    if (sf.off_block_residual > 1e-6)
        throw numeric_error("standard_form: map is not block diagonal in the constructed basis (residual " +
                            std::to_string(sf.off_block_residual) + ")");
    sf.lambda_plus = sf.phi_std.at(0, 0);
    sf.lambda_minus = sf.phi_std.at(1, 1);
    sf.a_block = sf.phi_std.block(2, 2, d - 1, d - 1);
    return sf;
}

double extend_graph_function(const StandardForm& sf, const Scalar& x, const KVec& zvec) {
    const Field f = sf.domain.field();
    const Scalar lp = sf.lambda_plus, lm = sf.lambda_minus;
    const Scalar ratio_s = lm * inverse(lp);
    if (abs(imag_part(ratio_s)) > 1e-8 * abs(ratio_s))
        throw numeric_error("extend_graph_function: lambda-/lambda+ is not real");
    const double ratio = real_part(ratio_s);
    if (std::abs(ratio) >= 1.0)
        throw numeric_error("extend_graph_function: the standard form does not contract");
    const Scalar lp_inv = inverse(lp);

    auto contracted = [&](const Scalar& xx, const KVec& zz) {
        // Exact chart action of the block matrix: z1 -> lm z1 lp^{-1}, z -> (A z) lp^{-1}.
        std::pair<Scalar, KVec> out{lm * xx * lp_inv, sf.a_block * zz};
        for (auto& s : out.second) s = s * lp_inv;
        return out;
    };
    auto value_at = [&](int steps, double* factor_out) {
        Scalar xx = x;
        KVec zz = zvec;
        double factor = 1.0;
        for (int k = 0; k < steps; ++k) {
            std::tie(xx, zz) = contracted(xx, zz);
            factor /= ratio;
        }
        *factor_out = std::abs(factor);
        if (abs(xx) >= sf.v_radius || norm(zz) >= sf.u_radius)
            return std::numeric_limits<double>::quiet_NaN();
        return factor * sf.graph_probe(xx, zz);
    };

    int n_min = 0;
    {
        Scalar xx = x;
        KVec zz = zvec;
        while ((abs(xx) >= sf.v_radius || norm(zz) >= sf.u_radius) && n_min < 10000) {
            std::tie(xx, zz) = contracted(xx, zz);
            ++n_min;
        }
        if (n_min >= 10000)
            throw numeric_error("extend_graph_function: contraction never entered the probe neighborhood");
    }
    (void)f;
    double f0 = 1, f1 = 1;
    const double v0 = value_at(n_min, &f0);
    const double v1 = value_at(n_min + 1, &f1);
    if (std::isnan(v0) || std::isnan(v1))
        throw numeric_error("extend_graph_function: probe left its neighborhood");
    // Probe values resolve the boundary to ~1e-14 in chart units; after the
    // rescaling that grows with the factor.
    const double slack = tol::extension_rel * std::max(std::abs(v0), std::abs(v1)) + 1e-13 * (f0 + f1);
    if (std::abs(v0 - v1) > slack)
        throw numeric_error("extend_graph_function: value depends on the step count (" +
                            std::to_string(v0) + " vs " + std::to_string(v1) + ")");
    return v0;
}

ProjMap special_one_parameter(const StandardForm& sf, double t) {
    const Field f = sf.domain.field();
    const int d = sf.domain.dim();
    KMatrix m = KMatrix::identity(f, d + 1);
    m.at(0, 0) = Scalar(f, std::exp(t));
    m.at(1, 1) = Scalar(f, std::exp(-t));
    return sf.to_original * ProjMap(m) * sf.to_standard;
}

StandardForm hessian_normalize(const StandardForm& sf, double h) {
    const Field f = sf.domain.field();
    const int d = sf.domain.dim();
    const int dz = d - 1;
    if (dz < 1) throw validation_error("hessian_normalize needs d >= 2");
    const Scalar zero_x = Scalar::zero(f);

    auto probe = [&](const KVec& zz) { return sf.graph_probe(zero_x, zz); };
    auto unit = [&](int i, const Scalar& s) {
        KVec z(dz, Scalar::zero(f));
        z[i] = s;
        return z;
    };

    // F(h z) = h^2/2 <z, A z> + o(h^2); polarization with unit phases fills in
    // the K-valued off-diagonal entries.
    KMatrix A(f, dz, dz);
    for (int i = 0; i < dz; ++i)
        A.at(i, i) = Scalar(f, 2.0 * probe(unit(i, Scalar(f, h))) / (h * h));
    for (int i = 0; i < dz; ++i)
        for (int j = i + 1; j < dz; ++j) {
            Scalar aij = Scalar::zero(f);
            for (int c = 0; c < real_dim(f); ++c) {
                Scalar u = Scalar::zero(f);
                u.c[c] = (c == 0) ? 1.0 : -1.0;
                KVec z = unit(i, Scalar(f, h));
                z[j] = u * h;
                const double mixed = 2.0 * probe(z) / (h * h) - A.at(i, i).c[0] - A.at(j, j).c[0];
                aij.c[c] = 0.5 * mixed;
            }
            A.at(i, j) = aij;
            A.at(j, i) = conj(aij);
        }

    const KMatrix g = hermitian_congruence_normalize(A);

    // z1 -> z1/2 absorbs the 1/2 of the Hessian expansion, so F becomes |z|^2.
    KMatrix change = KMatrix::identity(f, d + 1);
    change.at(1, 1) = Scalar(f, 0.5);
    for (int r = 0; r < dz; ++r)
        for (int c = 0; c < dz; ++c) change.at(2 + r, 2 + c) = g.at(r, c);

    StandardForm out = sf;
    out.to_original = sf.to_original * ProjMap(change);
    out.to_standard = inverse(out.to_original);
    out.phi_std = out.to_standard.mat * (sf.to_original.mat * sf.phi_std * sf.to_standard.mat) * out.to_original.mat;
    out.lambda_plus = out.phi_std.at(0, 0);
    out.lambda_minus = out.phi_std.at(1, 1);
    out.a_block = out.phi_std.block(2, 2, dz, dz);
    return out;
}

bool preserves_domain(const ProjMap& phi, const Domain& domain, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const ProjMap inv = inverse(phi);
    for (int i = 0; i < samples; ++i) {
        const ProjPoint p = domain.sample_interior(rng);
        if (domain.defining_value(apply(phi, p)) > tol::aut_check) return false;
        if (domain.defining_value(apply(inv, p)) > tol::aut_check) return false;
    }
    return true;
}

ComposeSearchResult compose_biproximal_search(const std::vector<ProjMap>& phis,
                                              const std::vector<ProjMap>& psis,
                                              const Domain& domain, int power_budget) {
    if (phis.empty() || psis.empty())
        throw validation_error("compose_biproximal_search needs nonempty sequences");
    for (const auto& m : phis)
        if (!preserves_domain(m, domain, 300)) throw validation_error("a phi candidate does not preserve the domain");
    for (const auto& m : psis)
        if (!preserves_domain(m, domain, 300)) throw validation_error("a psi candidate does not preserve the domain");

    const size_t count = std::min(phis.size(), psis.size());
    for (int power = 1; power <= power_budget; ++power) {
        for (size_t k = 0; k < count; ++k) {
            ProjMap gamma = ProjMap::identity(domain.field(), domain.dim());
            const ProjMap psi_inv = inverse(psis[k]);
            for (int a = 0; a < power; ++a) gamma = gamma * phis[k];
            for (int a = 0; a < power; ++a) gamma = gamma * psi_inv;
            ProximalClass cls;
            try {
                cls = classify(gamma);
            } catch (const std::exception&) {
                continue;
            }
            if (cls.variant != Proximality::BiProximal) continue;
            if (domain.contains(*cls.x_plus, 1e-6) != Containment::Boundary) continue;
            if (domain.contains(*cls.x_minus, 1e-6) != Containment::Boundary) continue;
            ComposeSearchResult out;
            out.found = true;
            out.gamma = gamma;
            out.cls = cls;
            out.index = static_cast<int>(k);
            out.power = power;
            return out;
        }
    }
    return {};
}

LimitSetSample limit_set_sample(const std::vector<ProjMap>& generators, const Domain& domain,
                                const ProjPoint& p, int depth, std::uint64_t seed, int word_count,
                                double near_band, double cluster_radius) {
    if (cluster_radius <= 0) cluster_radius = 5.0 * near_band;
    if (generators.empty()) throw validation_error("limit_set_sample needs generators");
    for (size_t i = 0; i < generators.size(); ++i) {
        if (!preserves_domain(generators[i], domain, 300))
            throw validation_error("generator " + std::to_string(i) + " does not preserve the domain");
    }
    if (domain.contains(p) != Containment::Inside)
        throw validation_error("limit_set_sample: base point is not interior");

    LimitSetSample out;
    out.seed = seed;
    Rng rng(seed);
    std::vector<ProjMap> gens;  // generators and inverses
    for (const auto& g : generators) {
        gens.push_back(g);
        gens.push_back(inverse(g));
    }

    std::vector<ProjPoint> hits;
    std::vector<std::string> hit_words;
    for (int w = 0; w < word_count; ++w) {
        const double u = rng.uniform(1e-12, 1.0);
        const double mean = std::max(2.0, depth / 2.0);
        int length = 1 + static_cast<int>(-std::log(u) * mean / 2.0);
        length = std::min(length, depth);
        ProjPoint q = p;
        std::ostringstream word;
        for (int step = 0; step < length; ++step) {
            const int pick = rng.uniform_int(0, static_cast<int>(gens.size()) - 1);
            q = apply(gens[pick], q);
            if (step) word << " ";
            word << "g" << (pick / 2) << ((pick % 2) ? "'" : "");
        }
        if (domain.contains(q) != Containment::Inside) continue;  // numerical drift guard
        if (domain.defining_value(q) < -0.5) continue;            // nowhere near the boundary
        try {
            const ProjPoint b = domain.project_to_boundary(q);
            if (proj_distance(q, b) <= near_band) {
                hits.push_back(b);
                hit_words.push_back(word.str());
            }
        } catch (const numeric_error&) {
            continue;  // degenerate anchor ray
        }
    }

    // Single-linkage clustering of the projected boundary points; the
    // accumulation trails toward a fixed point chain together.
    const size_t n = hits.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (proj_distance(hits[a], hits[b]) <= cluster_radius) parent[find(a)] = find(b);

    std::map<size_t, std::vector<size_t>> clusters;
    for (size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);
    for (const auto& [root, members] : clusters) {
        // medoid representative
        size_t best = members.front();
        double best_sum = 1e300;
        for (size_t i : members) {
            double sum = 0;
            for (size_t j : members) sum += proj_distance(hits[i], hits[j]);
            if (sum < best_sum) { best_sum = sum; best = i; }
        }
        out.points.push_back(hits[best]);
        out.multiplicity.push_back(static_cast<int>(members.size()));
    }
    out.words = std::move(hit_words);
    return out;
}

}  // namespace kproj
