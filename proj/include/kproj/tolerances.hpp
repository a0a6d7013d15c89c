#pragma once

namespace kproj::tol {

// Every numeric knob referenced by the library lives here so that
// `kproj verify --show-config` can print them all.

inline constexpr double point_eq             = 1e-10;  // projective point equality on canonical reps
inline constexpr double pivot_rel            = 1e-12;  // canonicalization pivot threshold (relative to max modulus)
inline constexpr double vanish               = 1e-10;  // |pairing| below this counts as f(p) = 0 on unit reps
inline constexpr double boundary_band        = 1e-9;   // half-width of the boundary band on defining values
inline constexpr double dual_cert            = 1e-9;   // certification sweep: min |f(p)| over interior samples
inline constexpr int    dual_cert_samples    = 10000;  // interior samples per certification sweep
inline constexpr double pairing_rel          = 1e-6;   // conjugate eigenvalue pairing, relative mismatch
inline constexpr double sigma_tie_rel        = 1e-9;   // sigma values closer than this (relative) count as tied
inline constexpr double prox_gap             = 1e-9;   // bi-proximal requires gap > 1 + prox_gap
inline constexpr double eigenline_step       = 1e-12;  // power iteration: successive d_P convergence
inline constexpr int    eigenline_max_iter   = 10000;
inline constexpr double kak_pair_rel         = 1e-8;   // embedding singular values must pair up this tightly
inline constexpr double kak_project_residual = 1e-8;   // quaternionic structure residual of unitary factors
inline constexpr double congruence_residual  = 1e-10;
inline constexpr double cholesky_pivot       = 1e-12;  // pivot below this (relative) => not positive definite
inline constexpr double rank_one_conv        = 1e-10;  // successive normalized powers, quotient distance
inline constexpr int    rank_one_max_squarings = 200;
inline constexpr double std_form_residual    = 1e-9;   // off-block entries of the standard-form matrix
inline constexpr double probe_radius         = 0.1;    // graph-function probe neighborhood (chart units)
inline constexpr double extension_rel        = 1e-8;   // N vs N+1 disagreement in the graph-function extension
inline constexpr double pairing_floor        = 1e-300; // |f(p)| below this is an uncertified functional, not -inf
inline constexpr double sphere_fit_holdout   = 1e-8;
inline constexpr double aut_check            = 1e-9;   // sampled automorphism verification slack
inline constexpr double fd_gradient_step     = 1e-6;   // finite-difference step for graph-domain gradients

}  // namespace kproj::tol
