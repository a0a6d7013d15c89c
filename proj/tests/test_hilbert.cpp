#include <doctest.h>

#include "kproj/dynamics.hpp"
#include "kproj/hilbert.hpp"

using namespace kproj;

namespace {

ProjPoint axis_point(Field f, int d, double t, int axis = 1) {
    KVec v(d + 1, Scalar::zero(f));
    v[0] = Scalar::one(f);
    v[axis] = Scalar(f, t);
    return canonicalize(v);
}

double witness_value(const DistanceResult& r, const ProjPoint& p, const ProjPoint& q) {
    return std::log(abs_pairing(r.f, p)) - std::log(abs_pairing(r.f, q)) +
           std::log(abs_pairing(r.g, q)) - std::log(abs_pairing(r.g, p));
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("closed form on the axis") {
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        const Domain ball = Domain::ball(f, 2);
        const ProjPoint x0 = ball.anchor();
        CHECK(ball_distance(ball, x0, x0).value == doctest::Approx(0.0));
        const DistanceResult r = ball_distance(ball, x0, axis_point(f, 2, 0.5));
        CHECK(r.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        // the reported witness pair reproduces the value
        CHECK(std::abs(witness_value(r, x0, axis_point(f, 2, 0.5)) - r.value) <= 1e-12);
    }
}

TEST_CASE("isometry invariance of the closed form") {
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    Rng rng(401);
    const ProjPoint p = ball.sample_interior(rng);
    const ProjPoint q = ball.sample_interior(rng);
    const double base = ball_distance(ball, p, q).value;
    for (int n = 0; n < 10; ++n) {
        const ProjMap iso = random_ball_isometry(f, 2, rng);
        CHECK(std::abs(ball_distance(ball, apply(iso, p), apply(iso, q)).value - base) <= 1e-9);
    }
    CHECK_THROWS_AS(ball_distance(ball, p, axis_point(f, 2, 1.0)), validation_error);
}

TEST_CASE("the two extreme functionals attain the sup") {
    const Field f = Field::Quaternion;
    const Domain ball = Domain::ball(f, 2);
    DualSample two;
    two.functionals = {
        canonicalize_dual(KVec{Scalar::one(f), Scalar(f, -1), Scalar::zero(f)}),
        canonicalize_dual(KVec{Scalar::one(f), Scalar::one(f), Scalar::zero(f)}),
    };
    two.requested = 2;
    const ProjPoint x0 = ball.anchor();
    const ProjPoint xt = axis_point(f, 2, 0.5);
    const DistanceResult r = general_distance(ball, x0, xt, two);
    CHECK(r.value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(general_distance(ball, xt, xt, two).value == doctest::Approx(0.0));
}

TEST_CASE("sampled lower bounds refine toward the closed form") {
    const Domain ball = Domain::ball(Field::Complex, 2);
    const DualSample dual = dual_sample(ball, 2000, 403, 2000);
    REQUIRE(dual.complete);
    Rng rng(405);
    for (int n = 0; n < 10; ++n) {
        const ProjPoint p = ball.sample_interior(rng);
        const ProjPoint q = ball.sample_interior(rng);
        const double exact = ball_distance(ball, p, q).value;
        const DistanceResult lb = general_distance(ball, p, q, dual);
        CHECK(lb.kind == DistanceKind::LowerBound);
        CHECK(lb.value <= exact + 1e-9);
        const DistanceResult refined = refine_on_ball_dual(ball, p, q, lb);
        CHECK(refined.value <= exact + 1e-9);
        CHECK(exact - refined.value <= 1e-2);
    }
}

TEST_CASE("adding functionals never decreases the bound") {
    const Domain ball = Domain::ball(Field::Complex, 2);
    const DualSample big = dual_sample(ball, 200, 407, 1500);
    DualSample small;
    small.functionals.assign(big.functionals.begin(), big.functionals.begin() + 40);
    Rng rng(409);
    for (int n = 0; n < 10; ++n) {
        const ProjPoint p = ball.sample_interior(rng);
        const ProjPoint q = ball.sample_interior(rng);
        CHECK(general_distance(ball, p, q, small).value <=
              general_distance(ball, p, q, big).value + 1e-12);
    }
}

TEST_CASE("monotonicity under domain inclusion") {
    // C_B <= C_Omega for Omega inside B, realized through a shrinking map and
    // the invariance identity C_{phi B}(phi p, phi q) = C_B(p, q).
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    KVec d{Scalar::one(f), Scalar(f, 0.5), Scalar(f, 0.5)};
    const ProjMap shrink(KMatrix::diagonal(f, d));
    Rng rng(411);
    for (int n = 0; n < 25; ++n) {
        const ProjPoint p = ball.sample_interior(rng);
        const ProjPoint q = ball.sample_interior(rng);
        const double on_small = ball_distance(ball, p, q).value;  // = C_{phi B}(phi p, phi q)
        const double on_big = ball_distance(ball, apply(shrink, p), apply(shrink, q)).value;
        CHECK(on_big <= on_small + 1e-9);
    }
}

TEST_CASE("invariance transport of sampled duals") {
    const Field f = Field::Quaternion;
    const Domain ball = Domain::ball(f, 2);
    const DualSample dual = dual_sample(ball, 150, 413, 1500);
    Rng rng(415);
    const ProjPoint p = ball.sample_interior(rng);
    const ProjPoint q = ball.sample_interior(rng);

    CHECK(invariance_check(ball, ProjMap::identity(f, 2), p, q, dual).pass);
    CHECK(invariance_check(ball, random_ball_isometry(f, 2, rng), p, q, dual).pass);
    KVec d{Scalar(f, 2), Scalar::one(f), Scalar(f, 0.5)};
    CHECK(invariance_check(ball, ProjMap(KMatrix::diagonal(f, d)), p, q, dual).pass);
}

TEST_CASE("Cayley transport of the half-space metric") {
    const Field f = Field::Complex;
    const Domain half = Domain::half_space(f);
    const Domain ball = Domain::ball(f, 1);
    const ProjMap cayley = *half.ball_equivalence();
    const DualSample dual = dual_sample(half, 400, 417, 2000);
    Rng rng(419);
    for (int n = 0; n < 15; ++n) {
        const ProjPoint p = half.sample_interior(rng);
        const ProjPoint q = half.sample_interior(rng);
        const double through_cayley = ball_distance(ball, apply(cayley, p), apply(cayley, q)).value;
        // pairwise-transported duals give the same sup
        CHECK(invariance_check(half, cayley, p, q, dual).pass);
        // and the half-space lower bound refined on the transported side
        const DistanceResult lb = general_distance(half, p, q, dual);
        CHECK(lb.value <= through_cayley + 1e-9);
    }
}

TEST_CASE("escape profiles") {
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    const DualSample dual = dual_sample(ball, 300, 421, 1500);

    std::vector<ProjPoint> ps, qs;
    for (int n = 2; n <= 24; ++n) {
        const double rho = 1.0 - std::pow(2.0, -n);
        ps.push_back(axis_point(f, 2, rho, 1));
        qs.push_back(axis_point(f, 2, rho, 2));
    }
    const EscapeProfile diverged = pair_escape_profile(ball, ps, qs, dual);
    CHECK(diverged.diverging);
    CHECK(diverged.values.back() > 20.0);

    // identical sequences: all zero, and every functional vanishing at the
    // limit x also vanishes at y = x
    const EscapeProfile same = pair_escape_profile(ball, ps, ps, dual);
    CHECK(!same.diverging);
    for (double v : same.values) CHECK(v == doctest::Approx(0.0));
    CHECK(same.violations.empty());

    // two radii into the same boundary point
    std::vector<ProjPoint> qs2;
    for (int n = 2; n <= 24; ++n) {
        const double rho = 1.0 - std::pow(2.0, -n);
        KVec v(3, Scalar::zero(f));
        v[0] = Scalar::one(f);
        v[1] = Scalar(f, rho * 0.9995);
        v[2] = Scalar(f, 0.01);
        qs2.push_back(canonicalize(v));
    }
    const EscapeProfile near = pair_escape_profile(ball, ps, qs2, dual, 1e-3, 5e-2);
    if (!near.diverging) CHECK(near.violations.empty());
}

TEST_CASE("vanishing pairings are surfaced, not clamped") {
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    DualSample bad;
    bad.functionals = {basis_dual(f, 2, 1)};  // kernel passes through the center
    CHECK_THROWS_AS(general_distance(ball, ball.anchor(), axis_point(f, 2, 0.3), bad), numeric_error);
}

}  // TEST_SUITE
