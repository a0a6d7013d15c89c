#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kproj/scalar.hpp"
#include "kproj/tolerances.hpp"

namespace kproj {

using KVec = std::vector<Scalar>;
using CMat = Eigen::MatrixXcd;

// --- vector helpers (right K-module conventions) ---

Scalar inner(const KVec& v, const KVec& w);       // <v,w> = conj(v)^t w
double norm2(const KVec& v);
double norm(const KVec& v);
KVec scale_right(const KVec& v, const Scalar& s); // entrywise v_i * s
KVec scale(const KVec& v, double t);
KVec add(const KVec& v, const KVec& w);
KVec sub(const KVec& v, const KVec& w);

// Dense matrix over K acting on column vectors from the left,
// scalars acting on vectors from the right.
struct KMatrix {
    Field field = Field::Real;
    int rows = 0, cols = 0;
    std::vector<Scalar> a;  // row-major

    KMatrix() = default;
    KMatrix(Field f, int r, int c) : field(f), rows(r), cols(c), a(r * c, Scalar::zero(f)) {}

    static KMatrix identity(Field f, int n);
    static KMatrix diagonal(Field f, const KVec& d);
    static KMatrix zero(Field f, int r, int c) { return KMatrix(f, r, c); }
    static KMatrix from_columns(Field f, const std::vector<KVec>& cols);

    Scalar& at(int r, int c) { return a[r * cols + c]; }
    const Scalar& at(int r, int c) const { return a[r * cols + c]; }
    bool square() const { return rows == cols; }
    KVec column(int c) const;
    KMatrix block(int r0, int c0, int nr, int nc) const;
};

KMatrix operator*(const KMatrix& x, const KMatrix& y);
KVec operator*(const KMatrix& m, const KVec& v);
KMatrix operator+(const KMatrix& x, const KMatrix& y);
KMatrix operator-(const KMatrix& x, const KMatrix& y);
KMatrix operator*(const KMatrix& x, double t);
inline KMatrix operator*(double t, const KMatrix& x) { return x * t; }

KMatrix conj_transpose(const KMatrix& m);
KMatrix lie_bracket(const KMatrix& x, const KMatrix& y);  // xy - yx

double frobenius_norm(const KMatrix& m);
double operator_norm(const KMatrix& m);  // power iteration on conj_transpose(m)*m
KMatrix inverse(const KMatrix& m);       // Gauss-Jordan with partial pivoting, valid over H

// Left scalar multiplication on K ~ R^r as a real r x r matrix M(w).
// Satisfies M(w1 w2) = M(w1) M(w2) and M(w)^t = M(conj(w)).
KMatrix real_representation(const Scalar& w);

// GL_d(H) -> GL_2d(C) blockwise (q = z + w j  ->  [[z, w], [-conj w, conj z]]);
// identity passthrough for C, real entries widened for R.
CMat complex_embedding(const KMatrix& m);

// Inverse of complex_embedding; throws numeric_error if the argument is
// farther than `tolerance` (relative Frobenius) from the embedded subspace.
KMatrix from_complex_embedding(const CMat& m, Field f, double tolerance = tol::kak_project_residual);

// |det| through the embedding: native |det| for R and C, the appendix-style
// 2d x 2d determinant modulus for H.  Multiplicative; 0 for singular input.
double det_abs(const KMatrix& m);

// Eigenvalue moduli of the representative normalized to det-modulus one.
struct SigmaSpectrum {
    std::vector<double> sigmas;      // nondecreasing, product 1
    double normalization = 1.0;      // scale applied to reach the det=+-1 representative
    double pairing_residual = 0.0;   // H only: worst relative conjugate-pair mismatch
};

SigmaSpectrum sigma_spectrum(const KMatrix& m);

// m = k1 * diag(a) * k2 with K-unitary factors and nonincreasing a > 0.
struct KakFactors {
    KMatrix k1, k2;
    std::vector<double> a;
};

KakFactors kak_decompose(const KMatrix& m);

// For K-Hermitian positive definite A returns g with conj(g)^t A g = Id.
KMatrix hermitian_congruence_normalize(const KMatrix& A);

}  // namespace kproj
