#include "kproj/moebius.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace kproj {

ExtendedScalar from_projective(const ProjPoint& p) {
    if (p.rep.size() != 2) throw validation_error("extended scalars live in P(K^2)");
    if (abs(p.rep[1]) <= 1e-12 * abs(p.rep[0])) return ExtendedScalar::infinity(p.field);
    return ExtendedScalar::finite(p.rep[0] * inverse(p.rep[1]));
}

ProjPoint to_projective(const ExtendedScalar& x, Field f) {
    if (x.infinite) return canonicalize(KVec{Scalar::one(f), Scalar::zero(f)});
    return canonicalize(KVec{x.z, Scalar::one(f)});
}

KMatrix MoebiusMap::matrix() const {
    KMatrix m(field(), 2, 2);
    m.at(0, 0) = a; m.at(0, 1) = b;
    m.at(1, 0) = c; m.at(1, 1) = d;
    return m;
}

MoebiusMap MoebiusMap::from_matrix(const KMatrix& m) {
    if (m.rows != 2 || m.cols != 2) throw validation_error("Moebius map needs a 2x2 matrix");
    if (det_abs(m) <= 1e-250) throw validation_error("Moebius matrix must be invertible");
    return MoebiusMap{m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
}

MoebiusMap MoebiusMap::identity(Field f) {
    return {Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};
}

MoebiusMap MoebiusMap::cayley(Field f) {
    return {Scalar::one(f), Scalar(f, -1), Scalar::one(f), Scalar::one(f)};
}

MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y) {
    return MoebiusMap::from_matrix(x.matrix() * y.matrix());
}

MoebiusMap inverse(const MoebiusMap& m) { return MoebiusMap::from_matrix(inverse(m.matrix())); }

ExtendedScalar apply(const MoebiusMap& m, const ExtendedScalar& x) {
    // Lift to P(K^2), act, project: no special division rules at infinity.
    const Field f = m.field();
    const ProjPoint lifted = to_projective(x, f);
    return from_projective(canonicalize(m.matrix() * lifted.rep));
}

// --- spheres and hyperplanes ---

double SpherePlane::residual(const Scalar& z) const {
    const double lhs = abs(z - a), rhs = R * abs(z - b);
    return std::abs(lhs - rhs) / (1.0 + rhs);
}

Scalar SpherePlane::sample(Rng& rng) const {
    const Field f = a.field;
    if (is_plane()) {
        // a, b are reflections through the plane; foot and normal recover it.
        const Scalar n = (a - b) * (1.0 / abs(a - b));
        const Scalar foot = (a + b) * 0.5;
        Scalar z = foot;
        for (int c = 1; c < real_dim(f); ++c) {
            Scalar unit = Scalar::zero(f);
            unit.c[c] = 1;
            z = z + n * unit * rng.uniform(-3.0, 3.0);  // n * K_P spans the tangent directions
        }
        return z;
    }
    const double r2 = R * R;
    const Scalar center = (a - b * r2) * (1.0 / (1.0 - r2));
    const double rho2 = abs2(center) + (r2 * abs2(b) - abs2(a)) / (1.0 - r2);
    if (rho2 <= 0) throw validation_error("empty sphere locus");
    return center + rng.unit_scalar(f) * std::sqrt(rho2);
}

SpherePlane SpherePlane::sphere(const Scalar& center, double radius) {
    if (!(radius > 0)) throw validation_error("sphere radius must be positive");
    // Inverse points c + t u and c + (rho^2/t) u with |a - b| = 1 and R = t/rho >= 1.
    const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * radius * radius));
    const Scalar u = Scalar::one(center.field);
    SpherePlane s;
    s.a = center + u * t;
    s.b = center + u * (radius * radius / t);
    s.R = t / radius;
    return s;
}

SpherePlane SpherePlane::plane(const Scalar& unit_normal, double offset) {
    const double nn = abs(unit_normal);
    if (nn <= 1e-12) throw validation_error("plane needs a nonzero normal");
    const Scalar n = unit_normal * (1.0 / nn);
    const Scalar foot = n * offset;
    SpherePlane s;
    s.a = foot + n * 0.5;
    s.b = foot - n * 0.5;
    s.R = 1.0;
    return s;
}

SpherePlane map_sphereplane(const MoebiusMap& m, const SpherePlane& s, std::uint64_t seed,
                            double holdout_tol) {
    const Field f = m.field();
    const int r = real_dim(f);
    Rng rng(seed);

    auto image_sample = [&]() {
        for (int trial = 0; trial < 200; ++trial) {
            const ExtendedScalar w = apply(m, ExtendedScalar::finite(s.sample(rng)));
            if (!w.infinite && abs(w.z) < 1e6) return w.z;
        }
        throw numeric_error("could not sample finite image points of the locus");
    };

    // Fit alpha |z|^2 + 2 Re<beta, z> + gamma = 0 (real alpha, gamma; beta in K):
    // covers spheres (alpha != 0) and hyperplanes (alpha = 0) in one linear system.
    const int n_fit = std::max(3 * r, 12);
    Eigen::MatrixXd rows(n_fit, r + 2);
    for (int i = 0; i < n_fit; ++i) {
        const Scalar z = image_sample();
        rows(i, 0) = abs2(z);
        for (int c = 0; c < r; ++c) rows(i, 1 + c) = 2.0 * z.c[c];
        rows(i, r + 1) = 1.0;
        rows.row(i) /= std::max(rows.row(i).norm(), 1e-12);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const Eigen::VectorXd coef = svd.matrixV().col(r + 1);

    const double alpha = coef(0), gamma = coef(r + 1);
    Scalar beta = Scalar::zero(f);
    for (int c = 0; c < r; ++c) beta.c[c] = coef(1 + c);

    SpherePlane out;
    const double scale = std::sqrt(alpha * alpha + abs2(beta) + gamma * gamma);
    if (std::abs(alpha) > 1e-7 * scale) {
        const Scalar center = beta * (-1.0 / alpha);
        const double rho2 = abs2(center) - gamma / alpha;
        if (rho2 <= 0) throw numeric_error("sphere fit produced an empty locus");
        out = SpherePlane::sphere(center, std::sqrt(rho2));
    } else {
        const double bn = abs(beta);
        if (bn <= 1e-12) throw numeric_error("degenerate sphere fit");
        out = SpherePlane::plane(beta, -gamma / (2.0 * bn));
    }

    double worst = 0;
    for (int i = 0; i < 50; ++i) worst = std::max(worst, out.residual(image_sample()));
    if (worst > holdout_tol)
        throw numeric_error("sphere transport holdout residual " + std::to_string(worst));
    return out;
}

// --- half-space automorphisms ---

namespace {

// Exact membership for upper-triangular matrices: (a, b; 0, d) lies in the
// stabilizer of infinity iff a conj(d) is real positive and Re(conj(d) b) = 0.
bool upper_triangular_member(const Scalar& a, const Scalar& b, const Scalar& d, double eps) {
    const Scalar ad = a * conj(d);
    if (abs(imag_part(ad)) > eps || ad.c[0] <= 0) return false;
    return std::abs((conj(d) * b).c[0]) <= eps;
}

}  // namespace

HalfspaceAutReport halfspace_aut_membership(const MoebiusMap& m, int samples, std::uint64_t seed) {
    const Field f = m.field();
    const double scale = std::max({abs(m.a), abs(m.b), abs(m.c), abs(m.d)});
    const double eps = 1e-10 * scale * scale;

    if (abs(m.c) <= 1e-12 * scale)
        return {upper_triangular_member(m.a, m.b, m.d, eps), "p_inf"};
    if (abs(m.b) <= 1e-12 * scale)
        return {upper_triangular_member(m.d, m.c, m.a, eps), "p_0_conjugate"};

    // Dense matrix: sampled preservation of Re z > 0 in both directions.
    Rng rng(seed);
    const MoebiusMap minv = inverse(m);
    for (int i = 0; i < samples; ++i) {
        Scalar z = Scalar(f, rng.uniform(0.01, 5.0)) + rng.imaginary_scalar(f, 2.0);
        const ExtendedScalar w = apply(m, ExtendedScalar::finite(z));
        if (w.infinite || real_part(w.z) < -tol::aut_check) return {false, "sampled"};
        const ExtendedScalar v = apply(minv, ExtendedScalar::finite(z));
        if (v.infinite || real_part(v.z) < -tol::aut_check) return {false, "sampled"};
    }
    return {true, "sampled"};
}

MoebiusMap generate_from_UV(Field f, const std::vector<std::pair<UVKind, Scalar>>& word) {
    MoebiusMap acc = MoebiusMap::identity(f);
    for (const auto& [kind, w] : word) {
        if (w.field != f) throw validation_error("generator parameter has the wrong field");
        if (std::abs(real_part(w)) > 1e-12 * std::max(1.0, abs(w)))
            throw validation_error("generator parameter must be purely imaginary");
        MoebiusMap gen = MoebiusMap::identity(f);
        if (kind == UVKind::U) gen.b = w;
        else gen.c = w;
        acc = acc * gen;
    }
    return acc;
}

}  // namespace kproj
