#pragma once

#include <string>

#include "kproj/domain.hpp"
#include "kproj/hilbert.hpp"

namespace kproj {

enum class Proximality { NotProximal, ProximalOnly, BiProximal };

const char* proximality_name(Proximality p);

struct ProximalClass {
    Proximality variant = Proximality::NotProximal;
    double gap_top = 1.0;     // sigma_{d+1} / sigma_d
    double gap_bottom = 1.0;  // sigma_2 / sigma_1
    SigmaSpectrum sigma;
    std::optional<ProjPoint> x_plus, x_minus;  // eigenlines, bi-proximal only
};

// Spectral classification; eigenlines by power iteration over K-lines.
ProximalClass classify(const ProjMap& phi);

// Dominant eigenline of an invertible matrix: power iteration with per-step
// canonicalization (the canonical rep absorbs the right eigenvalue phase).
ProjPoint dominant_eigenline(const KMatrix& m);

// phi^k p for k = 0..n.
std::vector<ProjPoint> iterate_orbit(const ProjMap& phi, const ProjPoint& p, int n);

// Limit of normalized powers in P(End): iterated squaring with operator-norm
// normalization.  Convergence is measured on end_distance and, over H (where
// a unit right-eigenvalue factor may keep rotating inside the real-scalar
// quotient), on the image line / kernel line / rank-one defect instead.
EndClass rank_one_limit(const ProjMap& phi);

// Coordinates realizing x+ = [1:0:...:0], x- = [0:1:0:...:0],
// H+ n H- = {[0:0:z]}, T_0 = K_P x K^{d-1}, and the domain on the
// Re(z_1) > F side of its boundary graph.
struct StandardForm {
    explicit StandardForm(Domain d) : domain(std::move(d)) {}

    Domain domain;          // the original domain
    ProjMap to_original;    // standard coordinates -> original coordinates
    ProjMap to_standard;    // inverse of the above
    KMatrix phi_std;        // block diag(lambda+, lambda-, A)
    Scalar lambda_plus, lambda_minus;
    KMatrix a_block;        // (d-1) x (d-1)
    double off_block_residual = 0;
    double v_radius = tol::probe_radius;  // K_P neighborhood of the local graph
    double u_radius = tol::probe_radius;  // K^{d-1} neighborhood

    Containment contains_std(const KVec& chart_z) const;
    double defining_std(const KVec& chart_z) const;
    // Boundary graph value F(x, zvec) for x in K_P, |x| < v_radius, |zvec| < u_radius,
    // solved by bisection of the defining function along the Re(z_1) axis.
    double graph_probe(const Scalar& x, const KVec& zvec) const;
};

StandardForm standard_form(const Domain& domain, const ProjMap& phi);

// F at any (x, zvec) in K_P x K^{d-1} through the contraction rescaling; the
// least N entering the probe neighborhood is used, and N+1 must agree.
double extend_graph_function(const StandardForm& sf, const Scalar& x, const KVec& zvec);

// diag(e^t, e^{-t}, Id) in standard coordinates, conjugated back.
ProjMap special_one_parameter(const StandardForm& sf, double t);

// Second-difference Hessian of the boundary graph at 0, congruence-normalized
// so the graph becomes |z|^2 on the nose (the matrix A of the real reduction).
StandardForm hessian_normalize(const StandardForm& sf, double h = 1e-3);

// Sampled verification that phi maps the domain into itself (both directions).
bool preserves_domain(const ProjMap& phi, const Domain& domain, int samples = 1000,
                      std::uint64_t seed = 11);

struct ComposeSearchResult {
    bool found = false;
    ProjMap gamma;
    ProximalClass cls;
    int index = -1;   // position in the scanned sequence
    int power = 0;    // word exponent that succeeded
};

// Scan products phi_k psi_k^{-1} (and powers up to the budget) for the first
// bi-proximal element with both fixed lines on the domain's boundary.
ComposeSearchResult compose_biproximal_search(const std::vector<ProjMap>& phis,
                                              const std::vector<ProjMap>& psis,
                                              const Domain& domain, int power_budget = 3);

struct LimitSetSample {
    std::vector<ProjPoint> points;      // cluster representatives
    std::vector<int> multiplicity;      // accumulation counts per cluster
    std::vector<std::string> words;     // words that reached the boundary band
    std::uint64_t seed = 0;
};

// Random words in the generators applied to p; orbit points near the boundary
// are projected onto it along the anchor ray and clustered.  A nonpositive
// cluster radius means 5 * near_band.
LimitSetSample limit_set_sample(const std::vector<ProjMap>& generators, const Domain& domain,
                                const ProjPoint& p, int depth, std::uint64_t seed,
                                int word_count = 200, double near_band = 0.01,
                                double cluster_radius = 0.0);

}  // namespace kproj
