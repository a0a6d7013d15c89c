#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "kproj/projective.hpp"
#include "kproj/rng.hpp"

namespace kproj {

enum class DomainKind { Ball, HalfSpace, Paraboloid, Sec9, Graph };
enum class Containment { Inside, Boundary, Outside };

// Which real coordinate of z_1 the graph inequality bounds in the C^{1,1}
// example domain.  RealPart matches the Re(z_1) > F(...) normal form and pairs
// with the symmetry [z0:z1:...] -> [z1:z0:...]; ImaginaryPart pairs with
// [z0:z1:...] -> [z1:-z0:...].
enum class Sec9Convention { RealPart, ImaginaryPart };

// Expression tree for user-supplied graph-domain defining functions.
struct Expr {
    enum class Op { Const, Coord, Add, Sub, Mul, Neg, Re, Im, Abs, Abs2 };
    Op op = Op::Const;
    double value = 0;
    int index = 0;
    std::vector<std::shared_ptr<const Expr>> args;

    Scalar eval(Field f, const KVec& z) const;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct TangentData {
    ProjPoint at;
    DualPoint hyperplane;  // ker = T_x^K of the boundary
};

struct DualSample {
    std::vector<DualPoint> functionals;  // each certified: ker f misses the sampled interior
    std::uint64_t seed = 0;
    int requested = 0;
    bool complete = true;
};

// A proper domain with a defining-function membership test.  All models are
// immutable after construction; samplers take the caller's Rng.
class Domain {
public:
    static Domain ball(Field f, int d);
    static Domain half_space(Field f);  // d = 1, points [z : 1], inside Re(z) > 0
    static Domain paraboloid(Field f, int d);
    static Domain sec9(Field f, int d, double amplitude = 0.5,
                       Sec9Convention convention = Sec9Convention::RealPart);
    static Domain graph(Field f, int d, ExprPtr defining, KVec chart_anchor, double chart_radius);

    Field field() const { return field_; }
    int dim() const { return dim_; }
    DomainKind kind() const { return kind_; }
    Sec9Convention sec9_convention() const { return convention_; }
    double sec9_amplitude() const { return amplitude_; }
    double graph_chart_radius() const { return chart_radius_; }
    ExprPtr graph_expr() const { return expr_; }
    int chart_index() const { return chart_index_; }

    // Negative inside, positive outside; evaluated on the canonical unit
    // representative (scale-invariant for the closed-form models).
    double defining_value(const ProjPoint& p) const;
    Containment contains(const ProjPoint& p, double band = tol::boundary_band) const;

    ProjPoint anchor() const;
    ProjPoint sample_interior(Rng& rng) const;
    ProjPoint sample_boundary(Rng& rng) const;

    TangentData tangent_hyperplane(const ProjPoint& x) const;

    // Chart data of the tangent at a boundary point: chart coordinates of x
    // and the K-gradient of the defining function there.  Used by the dual
    // sampler to push kernels outward.
    struct ChartTangent {
        KVec z;  // chart coordinates (length dim)
        KVec c;  // K-gradient (length dim)
    };
    ChartTangent chart_tangent(const ProjPoint& x) const;
    DualPoint functional_from_chart(const KVec& z, const KVec& c) const;

    // Projective equivalence onto the ball for the models that have one.
    std::optional<ProjMap> ball_equivalence() const;

    // Sec9 extras: the swap symmetry T and the e^t one-parameter scaling.
    ProjMap sec9_symmetry() const;
    ProjMap sec9_scaling(double t) const;
    double sec9_fhat_chart(const KVec& zvec) const;  // F^ on chart coordinates z_2..z_d

    ProjPoint project_to_boundary(const ProjPoint& p) const;

    // Upper bound for the d_P distance to the complement, by bisection along
    // random projective directions through p.
    double boundary_distance(const ProjPoint& p, int directions = 64, std::uint64_t seed = 1) const;

private:
    Domain() = default;

    KVec chart_coords(const KVec& rep) const;
    ProjPoint from_chart(const KVec& z) const;
    double chart_defining(const KVec& z) const;

    Field field_ = Field::Real;
    int dim_ = 1;
    DomainKind kind_ = DomainKind::Ball;
    int chart_index_ = 0;
    KMatrix form_;  // Hermitian form of the quadric models (inside < 0)
    double amplitude_ = 0.5;
    Sec9Convention convention_ = Sec9Convention::RealPart;
    ExprPtr expr_;
    KVec anchor_chart_;
    double chart_radius_ = 1.0;
};

// Exact dual of the unit ball: the closed dual ball { [1 : f] : |f| <= 1 }.
struct BallDual {
    Field field;
    int d;

    DualPoint sample(Rng& rng) const;          // interior + boundary mix
    DualPoint sample_extreme(Rng& rng) const;  // |f| = 1 stratum, where the sup lives
    double membership_residual(const DualPoint& f) const;  // <= 0 inside the closed dual
};

BallDual dual_exact_ball(Field f, int d);

// n functionals whose kernels provably (by dense interior sampling) miss the
// domain; tangent planes at boundary samples, pushed outward on failure.
DualSample dual_sample(const Domain& domain, int n, std::uint64_t seed,
                       int cert_samples = tol::dual_cert_samples);

bool certify_functional(const Domain& domain, const DualPoint& f,
                        const std::vector<ProjPoint>& interior, double eps = tol::dual_cert);

}  // namespace kproj
