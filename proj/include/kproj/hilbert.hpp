#pragma once

#include "kproj/domain.hpp"
#include "kproj/groups.hpp"

namespace kproj {

enum class DistanceKind { Exact, LowerBound };

struct DistanceResult {
    double value = 0;
    DistanceKind kind = DistanceKind::Exact;
    DualPoint f, g;        // witness pair attaining the reported value
    double tolerance = 0;  // reported accuracy of `value`
};

// Closed form on the unit ball: build the U_K(1,d) isometry sending p to the
// center and q onto [1 : t : 0 : ...], then log((1+t)/(1-t)).
DistanceResult ball_distance(const Domain& ball, const ProjPoint& p, const ProjPoint& q);

// sup over ordered pairs from a finite functional set; the witnesses are the
// argmax pair.  Throws numeric_error when a functional vanishes at p or q
// (such a functional was never certified for the domain).
DistanceResult dual_sup_value(const ProjPoint& p, const ProjPoint& q,
                              const std::vector<DualPoint>& functionals);

// Certified lower bound from a sampled dual.
DistanceResult general_distance(const Domain& domain, const ProjPoint& p, const ProjPoint& q,
                                const DualSample& dual);

// Exact-dual route on the ball: discrete maximum over sampled extreme
// functionals refined by projected gradient ascent on the dual sphere.
DistanceResult general_distance(const Domain& ball, const ProjPoint& p, const ProjPoint& q,
                                const BallDual& dual, int init_samples, std::uint64_t seed);

// Refine a sampled-dual result by projected gradient ascent on the ball's
// extreme dual sphere, starting from the witnesses of `start`.
DistanceResult refine_on_ball_dual(const Domain& ball, const ProjPoint& p, const ProjPoint& q,
                                   const DistanceResult& start);

struct InvarianceReport {
    double base = 0;
    double transported = 0;
    double difference = 0;
    bool pass = false;
};

// C_Omega(p, q) against C_{phi Omega}(phi p, phi q) with the dual moved by the
// conjugate-transpose-inverse; equal for any invertible phi.
InvarianceReport invariance_check(const Domain& domain, const ProjMap& phi, const ProjPoint& p,
                                  const ProjPoint& q, const DualSample& dual, double eps = 1e-10);

struct EscapeProfile {
    std::vector<double> values;
    bool diverging = false;
    ProjPoint x_limit, y_limit;       // boundary projections of the final pair
    std::vector<int> vanishing_at_x;  // dual indices with f(x) ~ 0
    std::vector<int> violations;      // of those, the ones not vanishing at y
};

// Diagnostic for the boundary behaviour of C_Omega along two point sequences.
EscapeProfile pair_escape_profile(const Domain& domain, const std::vector<ProjPoint>& ps,
                                  const std::vector<ProjPoint>& qs, const DualSample& dual,
                                  double vanish_eps = 1e-4, double violation_eps = 1e-3,
                                  double divergence_level = 20.0);

}  // namespace kproj
