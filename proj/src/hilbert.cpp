#include "kproj/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace kproj {

namespace {

void require_strictly_inside(const Domain& domain, const ProjPoint& p, const char* who) {
    if (domain.defining_value(p) >= -tol::boundary_band)
        throw validation_error(std::string(who) + ": point is not strictly inside the domain");
}

double log_pairing(const DualPoint& f, const ProjPoint& p) {
    const double a = abs_pairing(f, p);
    if (a <= tol::pairing_floor)
        throw numeric_error("functional vanishes at an evaluation point; it is not certified for this domain");
    return std::log(a);
}

}  // namespace

DistanceResult ball_distance(const Domain& ball, const ProjPoint& p, const ProjPoint& q) {
    if (ball.kind() != DomainKind::Ball) throw validation_error("ball_distance needs the ball model");
    require_strictly_inside(ball, p, "ball_distance");
    require_strictly_inside(ball, q, "ball_distance");
    const Field f = ball.field();
    const int d = ball.dim();

    // t through the Q-invariant 1 - t^2 = Q(p,p) Q(q,q) / |Q(p,q)|^2, which is
    // symmetric in p and q by construction and free of the cancellation that
    // the frame route suffers near the boundary.
    const double qpp = q_form(p.rep, p.rep).c[0];
    const double qqq = q_form(q.rep, q.rep).c[0];
    const double one_minus_t2 = std::min(1.0, qpp * qqq / abs2(q_form(p.rep, q.rep)));
    const double t = std::sqrt(std::max(0.0, 1.0 - one_minus_t2));

    // Frame following the constructive proof: a Q-orthonormal basis whose
    // first vector spans p and whose first two span {p, q}.  It yields the
    // witness functionals; for (numerically) coincident or boundary-degenerate
    // pairs the second vector is dropped.
    KMatrix frame;
    bool framed_pair = !points_equal(p, q, 1e-13);
    if (framed_pair) {
        try {
            frame = q_orthonormal_frame(p.rep, &q.rep);
        } catch (const validation_error&) {
            framed_pair = false;
        }
    }
    if (!framed_pair) frame = q_orthonormal_frame(p.rep, nullptr);
    // The frame satisfies B* Q B = Q, so its inverse is the Q-adjoint Q B* Q;
    // this stays exact however close p sits to the boundary.
    KMatrix q_mat = KMatrix::identity(f, d + 1);
    q_mat.at(0, 0) = Scalar(f, -1);
    KMatrix iso = q_mat * conj_transpose(frame) * q_mat;  // in U_K(1, d), sends p to the center

    if (framed_pair) {
        const KVec y = iso * q.rep;
        const Scalar w = y[1] * inverse(y[0]);
        if (std::abs(abs(w) - t) > 1e-6)
            throw numeric_error("ball_distance: constructed isometry disagrees with the Q-invariant");
        if (abs(w) > 1e-14) {
            // Rotate the second coordinate so q lands on [1 : t : 0 : ...].
            KMatrix rot = KMatrix::identity(f, d + 1);
            rot.at(1, 1) = inverse(w) * abs(w);
            iso = rot * iso;
        }
    }

    KVec fs(d + 1, Scalar::zero(f)), gs(d + 1, Scalar::zero(f));
    fs[0] = Scalar::one(f); fs[1] = Scalar(f, -1);
    gs[0] = Scalar::one(f); gs[1] = Scalar::one(f);
    const KMatrix pullback = conj_transpose(iso);

    DistanceResult out;
    out.value = 2.0 * std::log1p(t) - std::log(one_minus_t2);
    out.kind = DistanceKind::Exact;
    out.f = canonicalize_dual(pullback * fs);
    out.g = canonicalize_dual(pullback * gs);
    out.tolerance = 1e-12;
    return out;
}

DistanceResult dual_sup_value(const ProjPoint& p, const ProjPoint& q,
                              const std::vector<DualPoint>& functionals) {
    if (functionals.empty()) throw validation_error("empty dual sample");
    // sup_{f,g} log |f(p)| |g(q)| / (|f(q)| |g(p)|) splits into two maxima.
    double best_f = -1e300, best_g = -1e300;
    size_t arg_f = 0, arg_g = 0;
    for (size_t i = 0; i < functionals.size(); ++i) {
        const double lp = log_pairing(functionals[i], p);
        const double lq = log_pairing(functionals[i], q);
        if (lp - lq > best_f) { best_f = lp - lq; arg_f = i; }
        if (lq - lp > best_g) { best_g = lq - lp; arg_g = i; }
    }
    DistanceResult out;
    out.value = best_f + best_g;
    out.kind = DistanceKind::LowerBound;
    out.f = functionals[arg_f];
    out.g = functionals[arg_g];
    out.tolerance = 0;
    return out;
}

DistanceResult general_distance(const Domain& domain, const ProjPoint& p, const ProjPoint& q,
                                const DualSample& dual) {
    require_strictly_inside(domain, p, "general_distance");
    require_strictly_inside(domain, q, "general_distance");
    return dual_sup_value(p, q, dual.functionals);
}

namespace {

// log |f(p)| - log |f(q)| for f = [1 : fvec], as a function of fvec.
double dual_objective(const KVec& fvec, const ProjPoint& p, const ProjPoint& q) {
    Scalar fp = p.rep[0], fq = q.rep[0];
    for (size_t i = 0; i < fvec.size(); ++i) {
        fp = fp + conj(fvec[i]) * p.rep[i + 1];
        fq = fq + conj(fvec[i]) * q.rep[i + 1];
    }
    const double ap = abs(fp), aq = abs(fq);
    if (ap <= tol::pairing_floor || aq <= tol::pairing_floor)
        throw numeric_error("dual ascent hit a vanishing pairing");
    return std::log(ap) - std::log(aq);
}

// Projected gradient ascent on the extreme sphere |fvec| = 1 with a
// backtracking line search per iteration.  The objective forms a narrow
// curved ravine when an evaluation point sits near the boundary, so plain
// steepest ascent zig-zags; an occasional line search along the displacement
// from an anchor iterate rides the ravine instead.
KVec ascend_on_sphere(KVec fvec, const ProjPoint& p, const ProjPoint& q) {
    const Field f = fvec.at(0).field;
    const int r = real_dim(f);
    const double h = 1e-7;
    double step = 0.25;
    double value = dual_objective(fvec, p, q);
    KVec anchor = fvec;
    int moves = 0;

    auto line_search = [&](const KVec& dir, double trial) {
        const double dn = norm(dir);
        if (dn < 1e-15) return false;
        for (int bt = 0; bt < 45; ++bt) {
            KVec cand = add(fvec, scale(dir, trial / dn));
            cand = scale(cand, 1.0 / norm(cand));
            const double cv = dual_objective(cand, p, q);
            if (cv > value) {
                fvec = cand;
                value = cv;
                step = trial;
                return true;
            }
            trial *= 0.5;
        }
        return false;
    };

    for (int it = 0; it < 25000; ++it) {
        KVec grad(fvec.size(), Scalar::zero(f));
        for (size_t i = 0; i < fvec.size(); ++i)
            for (int c = 0; c < r; ++c) {
                KVec fp = fvec, fm = fvec;
                fp[i].c[c] += h;
                fm[i].c[c] -= h;
                grad[i].c[c] = (dual_objective(fp, p, q) - dual_objective(fm, p, q)) / (2 * h);
            }
        grad = sub(grad, scale(fvec, inner(fvec, grad).c[0]));  // tangential component
        if (norm(grad) < 1e-13) break;
        if (!line_search(grad, std::min(0.5, 2.0 * step))) break;
        if (++moves % 16 == 0) {
            line_search(sub(fvec, anchor), 8.0 * step);  // ravine acceleration
            anchor = fvec;
        }
    }
    return fvec;
}

KVec extreme_chart(const DualPoint& f) {
    KVec fvec(f.rep.begin() + 1, f.rep.end());
    fvec = scale_right(fvec, inverse(f.rep[0]));
    const double n = norm(fvec);
    return scale(fvec, 1.0 / std::max(n, 1e-300));
}

DualPoint from_extreme_chart(const Field field, const KVec& fvec) {
    KVec rep{Scalar::one(field)};
    rep.insert(rep.end(), fvec.begin(), fvec.end());
    return canonicalize_dual(rep);
}

}  // namespace

DistanceResult general_distance(const Domain& ball, const ProjPoint& p, const ProjPoint& q,
                                const BallDual& dual, int init_samples, std::uint64_t seed) {
    if (ball.kind() != DomainKind::Ball) throw validation_error("exact-dual distance needs the ball model");
    require_strictly_inside(ball, p, "general_distance");
    require_strictly_inside(ball, q, "general_distance");

    Rng rng(seed);
    std::vector<DualPoint> init;
    init.reserve(init_samples);
    for (int i = 0; i < init_samples; ++i) init.push_back(dual.sample_extreme(rng));
    const DistanceResult discrete = dual_sup_value(p, q, init);

    const KVec fv = ascend_on_sphere(extreme_chart(discrete.f), p, q);
    const KVec gv = ascend_on_sphere(extreme_chart(discrete.g), q, p);

    DistanceResult out;
    out.f = from_extreme_chart(ball.field(), fv);
    out.g = from_extreme_chart(ball.field(), gv);
    out.value = dual_objective(fv, p, q) + dual_objective(gv, q, p);
    out.kind = DistanceKind::Exact;
    out.tolerance = 1e-6;
    return out;
}

DistanceResult refine_on_ball_dual(const Domain& ball, const ProjPoint& p, const ProjPoint& q,
                                   const DistanceResult& start) {
    if (ball.kind() != DomainKind::Ball) throw validation_error("refine_on_ball_dual needs the ball model");
    const KVec fv = ascend_on_sphere(extreme_chart(start.f), p, q);
    const KVec gv = ascend_on_sphere(extreme_chart(start.g), q, p);
    DistanceResult out;
    out.f = from_extreme_chart(ball.field(), fv);
    out.g = from_extreme_chart(ball.field(), gv);
    out.value = dual_objective(fv, p, q) + dual_objective(gv, q, p);
    out.kind = DistanceKind::Exact;
    out.tolerance = 1e-6;
    return out;
}

InvarianceReport invariance_check(const Domain& domain, const ProjMap& phi, const ProjPoint& p,
                                  const ProjPoint& q, const DualSample& dual, double eps) {
    const DistanceResult base = general_distance(domain, p, q, dual);
    std::vector<DualPoint> moved;
    moved.reserve(dual.functionals.size());
    for (const auto& f : dual.functionals) moved.push_back(transport_dual(phi, f));
    const DistanceResult image = dual_sup_value(apply(phi, p), apply(phi, q), moved);

    InvarianceReport rep;
    rep.base = base.value;
    rep.transported = image.value;
    rep.difference = std::abs(base.value - image.value);
    rep.pass = rep.difference <= eps;
    return rep;
}

EscapeProfile pair_escape_profile(const Domain& domain, const std::vector<ProjPoint>& ps,
                                  const std::vector<ProjPoint>& qs, const DualSample& dual,
                                  double vanish_eps, double violation_eps, double divergence_level) {
    if (ps.size() != qs.size() || ps.empty())
        throw validation_error("pair_escape_profile needs two sequences of equal positive length");
    EscapeProfile out;
    out.values.reserve(ps.size());
    for (size_t n = 0; n < ps.size(); ++n) {
        if (domain.kind() == DomainKind::Ball)
            out.values.push_back(ball_distance(domain, ps[n], qs[n]).value);
        else
            out.values.push_back(general_distance(domain, ps[n], qs[n], dual).value);
    }
    out.diverging = out.values.back() > divergence_level;
    out.x_limit = domain.project_to_boundary(ps.back());
    out.y_limit = domain.project_to_boundary(qs.back());
    if (!out.diverging) {
        for (size_t i = 0; i < dual.functionals.size(); ++i) {
            if (abs_pairing(dual.functionals[i], out.x_limit) <= vanish_eps) {
                out.vanishing_at_x.push_back(static_cast<int>(i));
                if (abs_pairing(dual.functionals[i], out.y_limit) > violation_eps)
                    out.violations.push_back(static_cast<int>(i));
            }
        }
    }
    return out;
}

}  // namespace kproj
