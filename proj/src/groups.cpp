#include "kproj/groups.hpp"

#include <cmath>

namespace kproj {

Scalar q_form(const KVec& v, const KVec& w) {
    if (v.size() != w.size() || v.empty()) throw validation_error("q_form size mismatch");
    Scalar acc = -(conj(v[0]) * w[0]);
    for (size_t n = 1; n < v.size(); ++n) acc = acc + conj(v[n]) * w[n];
    return acc;
}

KMatrix q_orthonormal_frame(const KVec& timelike, const KVec* second) {
    const Field f = timelike.at(0).field;
    const int n = static_cast<int>(timelike.size());
    std::vector<KVec> basis;

    const double q00 = q_form(timelike, timelike).re();
    if (q00 >= -1e-14) throw validation_error("q_orthonormal_frame: first vector is not timelike");
    basis.push_back(scale(timelike, 1.0 / std::sqrt(-q00)));

    auto q_project_out = [&](KVec v) {
        // Right coefficients; the timelike direction carries the sign flip.
        v = sub(v, scale_right(basis[0], -(q_form(basis[0], v))));
        for (size_t i = 1; i < basis.size(); ++i) v = sub(v, scale_right(basis[i], q_form(basis[i], v)));
        return v;
    };
    auto try_add = [&](const KVec& cand, bool must) {
        KVec v = q_project_out(cand);
        const double qq = q_form(v, v).re();
        if (qq <= 1e-12 * std::max(1.0, norm2(v))) {
            if (must) throw validation_error("q_orthonormal_frame: vector is not spacelike after projection");
            return false;
        }
        basis.push_back(scale(v, 1.0 / std::sqrt(qq)));
        return true;
    };

    if (second) try_add(*second, true);
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
        KVec e(n, Scalar::zero(f));
        e[i] = Scalar::one(f);
        try_add(e, false);
    }
    if (static_cast<int>(basis.size()) < n)
        throw numeric_error("q_orthonormal_frame: could not complete the frame");
    return KMatrix::from_columns(f, basis);
}

KMatrix random_unitary(Field f, int n, Rng& rng) {
    std::vector<KVec> seed;
    for (int i = 0; i < n; ++i) seed.push_back(rng.gaussian_vector(f, n));
    return KMatrix::from_columns(f, orthonormal_extend(f, seed, n));
}

ProjMap random_ball_stabilizer(Field f, int d, Rng& rng) {
    KMatrix m = KMatrix::identity(f, d + 1);
    const KMatrix u = random_unitary(f, d, rng);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m.at(r + 1, c + 1) = u.at(r, c);
    return ProjMap(m);
}

ProjMap ball_transvection(Field f, int d, double t) {
    KMatrix m = KMatrix::identity(f, d + 1);
    m.at(0, 0) = Scalar(f, std::cosh(t));
    m.at(0, 1) = Scalar(f, std::sinh(t));
    m.at(1, 0) = Scalar(f, std::sinh(t));
    m.at(1, 1) = Scalar(f, std::cosh(t));
    return ProjMap(m);
}

ProjMap random_ball_isometry(Field f, int d, Rng& rng) {
    const ProjMap r1 = random_ball_stabilizer(f, d, rng);
    const ProjMap r2 = random_ball_stabilizer(f, d, rng);
    return r1 * ball_transvection(f, d, rng.uniform(-1.0, 1.0)) * r2;
}

ProjMap random_ball_biproximal(Field f, int d, Rng& rng, double tmin, double tmax) {
    const ProjMap g = random_ball_isometry(f, d, rng);
    return g * ball_transvection(f, d, rng.uniform(tmin, tmax)) * inverse(g);
}

}  // namespace kproj
