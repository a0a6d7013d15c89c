#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "kproj/projective.hpp"
#include "kproj/rng.hpp"

namespace kproj {

// K together with the point at infinity; round-trips with P(K^2) via
// [z1 : z2] -> z1 z2^{-1}, [1 : 0] -> infinity.
struct ExtendedScalar {
    bool infinite = false;
    Scalar z;

    static ExtendedScalar infinity(Field f) { return {true, Scalar::zero(f)}; }
    static ExtendedScalar finite(const Scalar& s) { return {false, s}; }
};

ExtendedScalar from_projective(const ProjPoint& p);
ProjPoint to_projective(const ExtendedScalar& x, Field f);

// z -> (a z + b)(c z + d)^{-1}, infinity through the homogeneous lift.
struct MoebiusMap {
    Scalar a, b, c, d;

    Field field() const { return a.field; }
    KMatrix matrix() const;
    static MoebiusMap from_matrix(const KMatrix& m);
    static MoebiusMap identity(Field f);
    static MoebiusMap cayley(Field f);  // z -> (z - 1)(z + 1)^{-1}, half-space onto the disk
};

MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y);
MoebiusMap inverse(const MoebiusMap& m);
ExtendedScalar apply(const MoebiusMap& m, const ExtendedScalar& x);

// The locus { z : |z - a| = R |z - b| }: a sphere when R != 1, an affine
// hyperplane when R = 1.  Gauge-fixed to |a - b| = 1 and R >= 1.
struct SpherePlane {
    Scalar a, b;
    double R = 1;

    bool is_plane(double eps = 1e-9) const { return std::abs(R - 1.0) <= eps; }
    double residual(const Scalar& z) const;  // normalized defining-equation residual
    Scalar sample(Rng& rng) const;

    static SpherePlane sphere(const Scalar& center, double radius);
    static SpherePlane plane(const Scalar& unit_normal, double offset);  // Re(conj(n) z) = offset
};

// Image locus fitted to >= 3r sampled image points (linear least squares on
// the generalized sphere equation), verified on a 50-point holdout.
SpherePlane map_sphereplane(const MoebiusMap& m, const SpherePlane& s, std::uint64_t seed = 1,
                            double holdout_tol = tol::sphere_fit_holdout);

struct HalfspaceAutReport {
    bool member = false;
    std::string normal_form;  // "p_inf", "p_0_conjugate", "sampled", or "" when rejected
};

// Membership in Aut_0 of { Re z > 0 }: exact algebraic test against the
// triangular normal forms, sampled preservation (both directions) otherwise.
HalfspaceAutReport halfspace_aut_membership(const MoebiusMap& m, int samples = 1000,
                                            std::uint64_t seed = 7);

enum class UVKind { U, V };  // U = upper-triangular translations, V = lower

// Product of unipotent generators with purely imaginary parameters.
MoebiusMap generate_from_UV(Field f, const std::vector<std::pair<UVKind, Scalar>>& word);

}  // namespace kproj
