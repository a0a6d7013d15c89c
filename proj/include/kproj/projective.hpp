#pragma once

#include <optional>
#include <vector>

#include "kproj/matrix.hpp"

namespace kproj {

// A K-line in K^{d+1}, parametrized on the right, stored through its
// canonical representative: unit norm, first non-negligible coordinate
// real and positive.  Canonicalization kills the right-scalar ambiguity,
// so two equal lines have (numerically) equal reps.
struct ProjPoint {
    Field field = Field::Real;
    KVec rep;

    int dim() const { return static_cast<int>(rep.size()) - 1; }
};

// A line of K-linear functionals, identified with K^{d+1} through the
// standard inner product; evaluation is f(v) = conj(fhat)^t v.
struct DualPoint {
    Field field = Field::Real;
    KVec rep;

    int dim() const { return static_cast<int>(rep.size()) - 1; }
};

ProjPoint canonicalize(const KVec& v);
DualPoint canonicalize_dual(const KVec& v);
ProjPoint basis_point(Field f, int dim, int index);
DualPoint basis_dual(Field f, int dim, int index);

bool points_equal(const ProjPoint& p, const ProjPoint& q, double eps = tol::point_eq);

// Chordal sin-angle metric, invariant under K-unitary maps.
double proj_distance(const ProjPoint& p, const ProjPoint& q);
double proj_distance(const DualPoint& f, const DualPoint& g);

Scalar pairing(const DualPoint& f, const ProjPoint& p);      // representative-dependent
double abs_pairing(const DualPoint& f, const ProjPoint& p);  // well defined on lines
bool vanishes(const DualPoint& f, const ProjPoint& p, double eps = tol::vanish);

// Element of PGL_{d+1}(K); the stored matrix is rescaled so its det modulus
// (through the embedding) is one.
struct ProjMap {
    KMatrix mat;

    ProjMap() = default;
    explicit ProjMap(KMatrix m);
    static ProjMap identity(Field f, int dim);
    int dim() const { return mat.rows - 1; }
    Field field() const { return mat.field; }
};

ProjMap operator*(const ProjMap& x, const ProjMap& y);
ProjMap inverse(const ProjMap& m);
ProjPoint apply(const ProjMap& m, const ProjPoint& p);
DualPoint apply(const ProjMap& m, const DualPoint& f);

// *phi acts on functionals by the conjugate-transpose matrix.
ProjMap dual_map(const ProjMap& m);

// The functional of phi(Omega) matching f of Omega: conj-transpose-inverse action.
DualPoint transport_dual(const ProjMap& phi, const DualPoint& f);

// The projective line L(x, y) through two distinct points.
struct ProjLine {
    ProjPoint x, y;
    KVec e1, e2;  // orthonormalized span

    ProjPoint point(const Scalar& s, const Scalar& t) const;
    bool contains(const ProjPoint& p, double eps = 1e-9) const;
};

ProjLine line_through(const ProjPoint& x, const ProjPoint& y);

// Nonzero endomorphism of K^{d+1} up to scalar (the field's scalar group for
// R and C, the reals for H), stored with unit operator norm.
struct EndClass {
    KMatrix rep;
};

EndClass make_end_class(const KMatrix& m);
double end_distance(const EndClass& x, const EndClass& y);

// Gram-Schmidt over K with right coefficients; extends `seed` (kept first,
// orthonormalized) to `count` orthonormal vectors using standard basis
// candidates.  Throws if the seed is numerically dependent.
std::vector<KVec> orthonormal_extend(Field f, const std::vector<KVec>& seed, int count);

}  // namespace kproj
