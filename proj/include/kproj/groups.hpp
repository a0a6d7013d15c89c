#pragma once

#include "kproj/projective.hpp"
#include "kproj/rng.hpp"

namespace kproj {

// The signature (1, d) Hermitian form with the minus sign on coordinate 0;
// the unit ball is { [v] : q_form(v, v) < 0 }.
Scalar q_form(const KVec& v, const KVec& w);

// Basis b_0, ..., b_d with Q(b_0,b_0) = -1, Q(b_i,b_i) = 1 and mixed terms 0,
// where b_0 spans the given timelike line and b_1 (when `second` is present)
// lies in the span of the first two inputs.  Returned as the column matrix B,
// so B^{-1} is an element of U_K(1, d) sending b_0 to e_0.
KMatrix q_orthonormal_frame(const KVec& timelike, const KVec* second = nullptr);

// Haar-ish random unitary over K via Gram-Schmidt on Gaussian columns.
KMatrix random_unitary(Field f, int n, Rng& rng);

// Block diag(1, u) with u in U_K(d): a random ball isometry fixing the center.
ProjMap random_ball_stabilizer(Field f, int d, Rng& rng);

// Hyperbolic translation along the first chart axis:
// [[cosh t, sinh t], [sinh t, cosh t]] + Id_{d-1}; in U_K(1, d).
ProjMap ball_transvection(Field f, int d, double t);

ProjMap random_ball_isometry(Field f, int d, Rng& rng);

// Conjugated transvection g a_t g^{-1}: bi-proximal with real eigenvalues
// e^t, e^{-t} and fixed lines on the unit sphere.
ProjMap random_ball_biproximal(Field f, int d, Rng& rng, double tmin = 0.35, double tmax = 1.4);

}  // namespace kproj
