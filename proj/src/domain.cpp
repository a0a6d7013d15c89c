#include "kproj/domain.hpp"

#include <algorithm>
#include <cmath>

namespace kproj {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// --- expression trees ---

Scalar Expr::eval(Field f, const KVec& z) const {
    switch (op) {
        case Op::Const: return Scalar(f, value);
        case Op::Coord:
            if (index < 0 || index >= static_cast<int>(z.size()))
                throw validation_error("expression coordinate index out of range");
            return z[index];
        case Op::Add: {
            Scalar acc = Scalar::zero(f);
            for (const auto& a : args) acc = acc + a->eval(f, z);
            return acc;
        }
        case Op::Sub: return args.at(0)->eval(f, z) - args.at(1)->eval(f, z);
        case Op::Mul: {
            Scalar acc = args.at(0)->eval(f, z);
            for (size_t i = 1; i < args.size(); ++i) acc = acc * args[i]->eval(f, z);
            return acc;
        }
        case Op::Neg: return -args.at(0)->eval(f, z);
        case Op::Re: return Scalar(f, real_part(args.at(0)->eval(f, z)));
        case Op::Im: return imag_part(args.at(0)->eval(f, z));
        case Op::Abs: return Scalar(f, abs(args.at(0)->eval(f, z)));
        case Op::Abs2: return Scalar(f, abs2(args.at(0)->eval(f, z)));
    }
    throw validation_error("bad expression node");
}

// --- construction ---

Domain Domain::ball(Field f, int d) {
    if (d < 1) throw validation_error("ball needs d >= 1");
    Domain dom;
    dom.field_ = f;
    dom.dim_ = d;
    dom.kind_ = DomainKind::Ball;
    dom.form_ = KMatrix::identity(f, d + 1);
    dom.form_.at(0, 0) = Scalar(f, -1);
    return dom;
}

Domain Domain::half_space(Field f) {
    Domain dom;
    dom.field_ = f;
    dom.dim_ = 1;
    dom.kind_ = DomainKind::HalfSpace;
    dom.chart_index_ = 1;
    dom.form_ = KMatrix(f, 2, 2);
    dom.form_.at(0, 1) = Scalar(f, -0.5);
    dom.form_.at(1, 0) = Scalar(f, -0.5);
    return dom;
}

Domain Domain::paraboloid(Field f, int d) {
    if (d < 1) throw validation_error("paraboloid needs d >= 1");
    Domain dom;
    dom.field_ = f;
    dom.dim_ = d;
    dom.kind_ = DomainKind::Paraboloid;
    dom.form_ = KMatrix::identity(f, d + 1);
    dom.form_.at(0, 0) = Scalar::zero(f);
    dom.form_.at(1, 1) = Scalar::zero(f);
    dom.form_.at(0, 1) = Scalar(f, -0.5);
    dom.form_.at(1, 0) = Scalar(f, -0.5);
    return dom;
}

Domain Domain::sec9(Field f, int d, double amplitude, Sec9Convention convention) {
    if (d < 2) throw validation_error("the C^{1,1} example needs d >= 2");
    if (!(amplitude > 0 && amplitude < 1.9))
        throw validation_error("sec9 amplitude must keep the graph factor positive");
    if (convention == Sec9Convention::ImaginaryPart && f == Field::Real)
        throw validation_error("the imaginary-part convention needs a complex or quaternionic field");
    Domain dom;
    dom.field_ = f;
    dom.dim_ = d;
    dom.kind_ = DomainKind::Sec9;
    dom.amplitude_ = amplitude;
    dom.convention_ = convention;
    return dom;
}

Domain Domain::graph(Field f, int d, ExprPtr defining, KVec chart_anchor, double chart_radius) {
    if (!defining) throw validation_error("graph domain needs a defining expression");
    if (static_cast<int>(chart_anchor.size()) != d) throw validation_error("anchor size mismatch");
    if (!(chart_radius > 0)) throw validation_error("chart radius must be positive");
    Domain dom;
    dom.field_ = f;
    dom.dim_ = d;
    dom.kind_ = DomainKind::Graph;
    dom.expr_ = std::move(defining);
    dom.anchor_chart_ = std::move(chart_anchor);
    dom.chart_radius_ = chart_radius;

    if (dom.chart_defining(dom.anchor_chart_) >= -tol::boundary_band)
        throw validation_error("graph anchor is not interior");
    // Boundedness probe: every ray from the anchor has to leave the domain.
    Rng rng(20240229);
    const int r = real_dim(f);
    for (int trial = 0; trial < 32; ++trial) {
        const KVec dir = rng.unit_vector(f, d);
        double t = chart_radius;
        bool escaped = false;
        while (t <= 1000.0 * chart_radius) {
            KVec z = dom.anchor_chart_;
            for (int i = 0; i < d; ++i) z[i] = z[i] + dir[i] * t;
            if (dom.chart_defining(z) >= 0) { escaped = true; break; }
            t *= 2;
        }
        (void)r;
        if (!escaped) throw validation_error("graph domain is unbounded in its chart");
    }
    return dom;
}

// --- charts and defining values ---

KVec Domain::chart_coords(const KVec& rep) const {
    double maxmod = 0;
    for (const auto& s : rep) maxmod = std::max(maxmod, abs(s));
    const Scalar& pivot = rep.at(chart_index_);
    if (abs(pivot) <= 1e-9 * maxmod) throw validation_error("point lies at the chart's infinity");
    const Scalar pinv = inverse(pivot);
    KVec z;
    z.reserve(dim_);
    for (int i = 0; i < static_cast<int>(rep.size()); ++i) {
        if (i == chart_index_) continue;
        z.push_back(rep[i] * pinv);
    }
    return z;
}

ProjPoint Domain::from_chart(const KVec& z) const {
    KVec rep;
    rep.reserve(dim_ + 1);
    int zi = 0;
    for (int i = 0; i <= dim_; ++i) {
        if (i == chart_index_) rep.push_back(Scalar::one(field_));
        else rep.push_back(z.at(zi++));
    }
    return canonicalize(rep);
}

double Domain::sec9_fhat_chart(const KVec& zvec) const {
    const double m = norm2(zvec);
    if (zvec.size() < 2 || m <= 1e-300) return 2.0;
    const double tau = (abs2(zvec[0]) - abs2(zvec[1])) / m;
    return 2.0 + amplitude_ * tau * std::abs(tau);  // C^{1,1}, second derivative jumps at tau = 0
}

double Domain::chart_defining(const KVec& z) const {
    switch (kind_) {
        case DomainKind::Ball:
            return norm2(z) - 1.0;
        case DomainKind::HalfSpace:
            return -real_part(z.at(0));
        case DomainKind::Paraboloid: {
            double m = 0;
            for (size_t i = 1; i < z.size(); ++i) m += abs2(z[i]);
            return m - real_part(z.at(0));
        }
        case DomainKind::Sec9: {
            KVec zv(z.begin() + 1, z.end());
            const double m = norm2(zv);
            const double g = (convention_ == Sec9Convention::RealPart) ? z[0].c[0] : z[0].c[1];
            return m * sec9_fhat_chart(zv) - g;
        }
        case DomainKind::Graph:
            return real_part(expr_->eval(field_, z));
    }
    throw validation_error("bad domain kind");
}

double Domain::defining_value(const ProjPoint& p) const {
    if (p.field != field_ || p.dim() != dim_) throw validation_error("point does not live in the domain's space");
    const KVec& v = p.rep;
    switch (kind_) {
        case DomainKind::Ball:
        case DomainKind::HalfSpace:
        case DomainKind::Paraboloid:
            return real_part(inner(v, form_ * v));
        case DomainKind::Sec9: {
            double m = 0;
            for (size_t i = 2; i < v.size(); ++i) m += abs2(v[i]);
            KVec zv(v.begin() + 2, v.end());
            const Scalar num = v[1] * conj(v[0]);
            const double g = (convention_ == Sec9Convention::RealPart) ? num.c[0] : num.c[1];
            return m * sec9_fhat_chart(zv) - g;
        }
        case DomainKind::Graph: {
            double maxmod = 0;
            for (const auto& s : v) maxmod = std::max(maxmod, abs(s));
            if (abs(v[chart_index_]) <= 1e-9 * maxmod) return 1.0;  // bounded in chart: infinity is outside
            KVec z = chart_coords(v);
            if (norm(z) > 1000.0 * chart_radius_) return 1.0;
            return chart_defining(z);
        }
    }
    throw validation_error("bad domain kind");
}

Containment Domain::contains(const ProjPoint& p, double band) const {
    const double val = defining_value(p);
    if (val < -band) return Containment::Inside;
    if (val <= band) return Containment::Boundary;
    return Containment::Outside;
}

// --- samplers ---

ProjPoint Domain::anchor() const {
    switch (kind_) {
        case DomainKind::Ball: return basis_point(field_, dim_, 0);
        case DomainKind::HalfSpace: {
            return canonicalize(KVec{Scalar::one(field_), Scalar::one(field_)});
        }
        case DomainKind::Paraboloid:
        case DomainKind::Sec9: {
            KVec rep(dim_ + 1, Scalar::zero(field_));
            rep[0] = Scalar::one(field_);
            rep[1] = (kind_ == DomainKind::Sec9 && convention_ == Sec9Convention::ImaginaryPart)
                         ? Scalar::i(field_)
                         : Scalar::one(field_);
            return canonicalize(rep);
        }
        case DomainKind::Graph: return from_chart(anchor_chart_);
    }
    throw validation_error("bad domain kind");
}

ProjPoint Domain::sample_interior(Rng& rng) const {
    switch (kind_) {
        case DomainKind::Ball: {
            KVec z = rng.ball_vector(field_, dim_);
            KVec rep{Scalar::one(field_)};
            rep.insert(rep.end(), z.begin(), z.end());
            return canonicalize(rep);
        }
        case DomainKind::HalfSpace: {
            Scalar z = Scalar(field_, rng.uniform(0.05, 4.0)) + rng.imaginary_scalar(field_, 1.5);
            return canonicalize(KVec{z, Scalar::one(field_)});
        }
        case DomainKind::Paraboloid:
        case DomainKind::Sec9: {
            KVec zv = (dim_ > 1) ? scale(rng.ball_vector(field_, dim_ - 1), 1.5) : KVec{};
            const double m = norm2(zv);
            const double bound = (kind_ == DomainKind::Paraboloid) ? m : m * sec9_fhat_chart(zv);
            Scalar z1;
            if (kind_ == DomainKind::Sec9 && convention_ == Sec9Convention::ImaginaryPart) {
                z1 = rng.imaginary_scalar(field_, 1.5);
                z1.c[0] = rng.uniform(-2.0, 2.0);
                z1.c[1] = bound + rng.uniform(0.05, 4.0);
            } else {
                z1 = Scalar(field_, bound + rng.uniform(0.05, 4.0)) + rng.imaginary_scalar(field_, 1.5);
            }
            KVec rep{Scalar::one(field_), z1};
            rep.insert(rep.end(), zv.begin(), zv.end());
            return canonicalize(rep);
        }
        case DomainKind::Graph: {
            for (int trial = 0; trial < 10000; ++trial) {
                KVec z = anchor_chart_;
                for (int i = 0; i < dim_; ++i) {
                    Scalar delta = Scalar::zero(field_);
                    for (int c = 0; c < real_dim(field_); ++c)
                        delta.c[c] = rng.uniform(-chart_radius_, chart_radius_);
                    z[i] = z[i] + delta;
                }
                if (chart_defining(z) < -tol::boundary_band) return from_chart(z);
            }
            return anchor();
        }
    }
    throw validation_error("bad domain kind");
}

ProjPoint Domain::sample_boundary(Rng& rng) const {
    switch (kind_) {
        case DomainKind::Ball: {
            KVec z = rng.unit_vector(field_, dim_);
            KVec rep{Scalar::one(field_)};
            rep.insert(rep.end(), z.begin(), z.end());
            return canonicalize(rep);
        }
        case DomainKind::HalfSpace:
            return canonicalize(KVec{rng.imaginary_scalar(field_, 1.5), Scalar::one(field_)});
        case DomainKind::Paraboloid:
        case DomainKind::Sec9: {
            KVec zv = (dim_ > 1) ? scale(rng.ball_vector(field_, dim_ - 1), 1.5) : KVec{};
            const double m = norm2(zv);
            const double bound = (kind_ == DomainKind::Paraboloid) ? m : m * sec9_fhat_chart(zv);
            Scalar z1;
            if (kind_ == DomainKind::Sec9 && convention_ == Sec9Convention::ImaginaryPart) {
                z1 = rng.imaginary_scalar(field_, 1.5);
                z1.c[0] = rng.uniform(-2.0, 2.0);
                z1.c[1] = bound;
            } else {
                z1 = Scalar(field_, bound) + rng.imaginary_scalar(field_, 1.5);
            }
            KVec rep{Scalar::one(field_), z1};
            rep.insert(rep.end(), zv.begin(), zv.end());
            return canonicalize(rep);
        }
        case DomainKind::Graph: {
            for (int trial = 0; trial < 64; ++trial) {
                const KVec dir = rng.unit_vector(field_, dim_);
                double lo = 0, hi = chart_radius_;
                auto at = [&](double t) {
                    KVec z = anchor_chart_;
                    for (int i = 0; i < dim_; ++i) z[i] = z[i] + dir[i] * t;
                    return z;
                };
                bool bracketed = false;
                while (hi <= 1000.0 * chart_radius_) {
                    if (chart_defining(at(hi)) >= 0) { bracketed = true; break; }
                    lo = hi;
                    hi *= 2;
                }
                if (!bracketed) continue;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (chart_defining(at(mid)) < 0 ? lo : hi) = mid;
                }
                return from_chart(at(0.5 * (lo + hi)));
            }
            throw numeric_error("graph boundary sampling failed");
        }
    }
    throw validation_error("bad domain kind");
}

// --- tangents ---

Domain::ChartTangent Domain::chart_tangent(const ProjPoint& x) const {
    ChartTangent out;
    switch (kind_) {
        case DomainKind::Ball:
        case DomainKind::HalfSpace:
        case DomainKind::Paraboloid: {
            const KVec w = scale_right(x.rep, inverse(x.rep.at(chart_index_)));
            const KVec fw = form_ * w;
            out.z = chart_coords(x.rep);
            out.c.reserve(dim_);
            for (int i = 0; i <= dim_; ++i) {
                if (i == chart_index_) continue;
                out.c.push_back(fw[i] * 2.0);
            }
            return out;
        }
        case DomainKind::Sec9: {
            out.z = chart_coords(x.rep);
            const Scalar z1 = out.z[0];
            (void)z1;
            KVec zv(out.z.begin() + 1, out.z.end());
            const double m = norm2(zv);
            const double fh = sec9_fhat_chart(zv);
            out.c.assign(dim_, Scalar::zero(field_));
            out.c[0] = (convention_ == Sec9Convention::RealPart) ? Scalar(field_, -1)
                                                                 : -Scalar::i(field_);
            for (int i = 0; i < static_cast<int>(zv.size()); ++i) out.c[i + 1] = zv[i] * (2.0 * fh);
            if (zv.size() >= 2 && m > 1e-300) {
                const double tau = (abs2(zv[0]) - abs2(zv[1])) / m;
                const double rho_p = amplitude_ * 2.0 * std::abs(tau);
                // d tau / d z_i over K, then chain through m * F^.
                for (int i = 0; i < static_cast<int>(zv.size()); ++i) {
                    Scalar dtau = zv[i] * (-2.0 * tau / m);
                    if (i == 0) dtau = zv[0] * (2.0 * (1.0 - tau) / m);
                    if (i == 1) dtau = zv[1] * (-2.0 * (1.0 + tau) / m);
                    out.c[i + 1] = out.c[i + 1] + dtau * (m * rho_p);
                }
            }
            return out;
        }
        case DomainKind::Graph: {
            out.z = chart_coords(x.rep);
            out.c.assign(dim_, Scalar::zero(field_));
            const double h = tol::fd_gradient_step;
            for (int i = 0; i < dim_; ++i) {
                for (int comp = 0; comp < real_dim(field_); ++comp) {
                    KVec zp = out.z, zm = out.z;
                    zp[i].c[comp] += h;
                    zm[i].c[comp] -= h;
                    out.c[i].c[comp] = (chart_defining(zp) - chart_defining(zm)) / (2 * h);
                }
            }
            return out;
        }
    }
    throw validation_error("bad domain kind");
}

DualPoint Domain::functional_from_chart(const KVec& z, const KVec& c) const {
    if (norm(c) < 1e-10) throw numeric_error("singular boundary point: vanishing gradient");
    KVec fhat(dim_ + 1, Scalar::zero(field_));
    int zi = 0;
    for (int i = 0; i <= dim_; ++i) {
        if (i == chart_index_) fhat[i] = -inner(z, c);
        else fhat[i] = c[zi++];
    }
    return canonicalize_dual(fhat);
}

TangentData Domain::tangent_hyperplane(const ProjPoint& x) const {
    if (contains(x) != Containment::Boundary)
        throw validation_error("tangent_hyperplane: point is not within the boundary band");
    switch (kind_) {
        case DomainKind::Ball:
        case DomainKind::HalfSpace:
        case DomainKind::Paraboloid: {
            const KVec fx = form_ * x.rep;
            if (norm(fx) < 1e-10) throw numeric_error("singular boundary point: vanishing gradient");
            return TangentData{x, canonicalize_dual(fx)};
        }
        case DomainKind::Sec9: {
            // The two distinguished limit points sit at the chart ends.
            if (proj_distance(x, basis_point(field_, dim_, 1)) <= 1e-8)
                return TangentData{x, basis_dual(field_, dim_, 0)};
            const ChartTangent ct = chart_tangent(x);
            return TangentData{x, functional_from_chart(ct.z, ct.c)};
        }
        case DomainKind::Graph: {
            const ChartTangent ct = chart_tangent(x);
            return TangentData{x, functional_from_chart(ct.z, ct.c)};
        }
    }
    throw validation_error("bad domain kind");
}

// --- model equivalences ---

std::optional<ProjMap> Domain::ball_equivalence() const {
    switch (kind_) {
        case DomainKind::Ball:
            return ProjMap::identity(field_, dim_);
        case DomainKind::HalfSpace: {
            KMatrix m(field_, 2, 2);
            m.at(0, 0) = Scalar::one(field_);
            m.at(0, 1) = Scalar::one(field_);
            m.at(1, 0) = Scalar::one(field_);
            m.at(1, 1) = Scalar(field_, -1);
            return ProjMap(m);
        }
        case DomainKind::Paraboloid: {
            KMatrix m = KMatrix::identity(field_, dim_ + 1) * 2.0;
            m.at(0, 0) = Scalar::one(field_);
            m.at(0, 1) = Scalar::one(field_);
            m.at(1, 0) = Scalar::one(field_);
            m.at(1, 1) = Scalar(field_, -1);
            return ProjMap(m);
        }
        default:
            return std::nullopt;
    }
}

ProjMap Domain::sec9_symmetry() const {
    if (kind_ != DomainKind::Sec9) throw validation_error("sec9_symmetry on a non-sec9 domain");
    KMatrix m = KMatrix::identity(field_, dim_ + 1);
    m.at(0, 0) = Scalar::zero(field_);
    m.at(1, 1) = Scalar::zero(field_);
    m.at(0, 1) = Scalar::one(field_);
    m.at(1, 0) = (convention_ == Sec9Convention::ImaginaryPart) ? Scalar(field_, -1) : Scalar::one(field_);
    return ProjMap(m);
}

ProjMap Domain::sec9_scaling(double t) const {
    if (kind_ != DomainKind::Sec9) throw validation_error("sec9_scaling on a non-sec9 domain");
    KMatrix m = KMatrix::identity(field_, dim_ + 1);
    m.at(0, 0) = Scalar(field_, std::exp(t));
    m.at(1, 1) = Scalar(field_, std::exp(-t));
    return ProjMap(m);
}

// --- boundary geometry ---

ProjPoint Domain::project_to_boundary(const ProjPoint& p) const {
    const KVec a = anchor().rep;
    auto along = [&](double t) {
        return canonicalize(add(scale(a, 1.0 - t), scale(p.rep, t)));
    };
    double lo = 0, hi = 1;
    if (defining_value(p) < 0) {
        hi = 1;
        while (hi < 1e6 && defining_value(along(hi)) < 0) { lo = hi; hi *= 2; }
        if (hi >= 1e6) throw numeric_error("no boundary crossing along the anchor ray");
    }
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (defining_value(along(mid)) < 0 ? lo : hi) = mid;
    }
    return along(0.5 * (lo + hi));
}

double Domain::boundary_distance(const ProjPoint& p, int directions, std::uint64_t seed) const {
    if (contains(p) != Containment::Inside)
        throw validation_error("boundary_distance: point is not interior");
    Rng rng(seed);
    double best = 1.0;
    const int grid = 64;
    for (int k = 0; k < directions; ++k) {
        KVec w = rng.gaussian_vector(field_, dim_ + 1);
        w = sub(w, scale_right(p.rep, inner(p.rep, w)));
        const double wn = norm(w);
        if (wn < 1e-9) continue;
        w = scale(w, 1.0 / wn);
        auto at = [&](double theta) {
            return canonicalize(add(scale(p.rep, std::cos(theta)), scale(w, std::sin(theta))));
        };
        auto bisect = [&](double tlo, double thi) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (tlo + thi);
                (defining_value(at(mid)) < 0 ? tlo : thi) = mid;
            }
            return 0.5 * (tlo + thi);
        };
        // First exit walking up from p, and first exit walking down from the
        // far end of the great circle.
        double prev = 0;
        for (int m = 1; m <= grid; ++m) {
            const double theta = kPi * m / grid;
            if (defining_value(at(theta)) >= 0) {
                best = std::min(best, std::abs(std::sin(bisect(prev, theta))));
                break;
            }
            prev = theta;
        }
        prev = kPi;
        for (int m = grid - 1; m >= 0; --m) {
            const double theta = kPi * m / grid;
            if (defining_value(at(theta)) >= 0) {
                best = std::min(best, std::abs(std::sin(bisect(prev, theta))));
                break;
            }
            prev = theta;
        }
    }
    return best;
}

// --- duals ---

BallDual dual_exact_ball(Field f, int d) { return BallDual{f, d}; }

DualPoint BallDual::sample(Rng& rng) const {
    KVec fv = rng.ball_vector(field, d);
    KVec rep{Scalar::one(field)};
    rep.insert(rep.end(), fv.begin(), fv.end());
    return canonicalize_dual(rep);
}

DualPoint BallDual::sample_extreme(Rng& rng) const {
    KVec fv = rng.unit_vector(field, d);
    KVec rep{Scalar::one(field)};
    rep.insert(rep.end(), fv.begin(), fv.end());
    return canonicalize_dual(rep);
}

double BallDual::membership_residual(const DualPoint& f) const {
    double tail = 0;
    for (size_t i = 1; i < f.rep.size(); ++i) tail += abs2(f.rep[i]);
    return tail - abs2(f.rep[0]);
}

bool certify_functional(const Domain& domain, const DualPoint& f,
                        const std::vector<ProjPoint>& interior, double eps) {
    (void)domain;
    for (const auto& p : interior) {
        if (abs_pairing(f, p) <= eps) return false;
    }
    return true;
}

DualSample dual_sample(const Domain& domain, int n, std::uint64_t seed, int cert_samples) {
    Rng rng(seed);
    std::vector<ProjPoint> interior;
    interior.reserve(cert_samples);
    for (int i = 0; i < cert_samples; ++i) interior.push_back(domain.sample_interior(rng));

    DualSample out;
    out.seed = seed;
    out.requested = n;
    const int budget = 40 * n + 100;
    int attempts = 0;
    while (static_cast<int>(out.functionals.size()) < n && attempts < budget) {
        ++attempts;
        const ProjPoint x = domain.sample_boundary(rng);
        Domain::ChartTangent ct;
        try {
            ct = domain.chart_tangent(x);
        } catch (const std::exception&) {
            continue;
        }
        const double cn = norm(ct.c);
        if (cn < 1e-10) continue;
        DualPoint f;
        try {
            f = domain.functional_from_chart(ct.z, ct.c);
        } catch (const std::exception&) {
            continue;
        }
        if (certify_functional(domain, f, interior)) {
            out.functionals.push_back(f);
            continue;
        }
        // Push the kernel outward along the gradient until it clears the samples.
        bool placed = false;
        for (int j = 0; j < 24 && !placed; ++j) {
            const double delta = 1e-6 * std::pow(2.0, j);
            KVec z_out = ct.z;
            for (size_t i = 0; i < z_out.size(); ++i) z_out[i] = z_out[i] + ct.c[i] * (delta / cn);
            const DualPoint g = domain.functional_from_chart(z_out, ct.c);
            if (certify_functional(domain, g, interior)) {
                out.functionals.push_back(g);
                placed = true;
            }
        }
    }
    out.complete = static_cast<int>(out.functionals.size()) == n;
    return out;
}

}  // namespace kproj
