#include <doctest.h>

#include "kproj/domain.hpp"
#include "kproj/groups.hpp"
#include "kproj/json_io.hpp"

using namespace kproj;

namespace {

ProjPoint ball_chart(Field f, std::initializer_list<Scalar> z) {
    KVec rep{Scalar::one(f)};
    rep.insert(rep.end(), z.begin(), z.end());
    return canonicalize(rep);
}

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("ball membership") {
    const Domain ball = Domain::ball(Field::Complex, 2);
    CHECK(ball.contains(ball.anchor()) == Containment::Inside);
    CHECK(ball.contains(ball_chart(Field::Complex, {Scalar(Field::Complex, 0.5), Scalar::zero(Field::Complex)})) ==
          Containment::Inside);
    CHECK(ball.contains(ball_chart(Field::Complex, {Scalar::one(Field::Complex), Scalar::zero(Field::Complex)})) ==
          Containment::Boundary);
    CHECK(ball.contains(basis_point(Field::Complex, 2, 1)) == Containment::Outside);  // chart infinity
    CHECK(ball.contains(ball_chart(Field::Complex, {Scalar(Field::Complex, 1.2), Scalar::zero(Field::Complex)})) ==
          Containment::Outside);
}

TEST_CASE("ball is closed under its unitary group") {
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        const Domain ball = Domain::ball(f, 2);
        Rng rng(301 + static_cast<int>(f));
        for (int n = 0; n < 40; ++n) {
            const ProjMap iso = random_ball_isometry(f, 2, rng);
            const ProjPoint p = ball.sample_interior(rng);
            CHECK(ball.defining_value(apply(iso, p)) < tol::aut_check);
        }
    }
}

TEST_CASE("half-space and paraboloid map onto the ball") {
    const Field f = Field::Quaternion;
    const Domain half = Domain::half_space(f);
    const Domain ball1 = Domain::ball(f, 1);
    const ProjMap cayley = *half.ball_equivalence();

    // 1 in the half-space goes to the center of the ball.
    CHECK(points_equal(apply(cayley, half.anchor()), ball1.anchor(), 1e-12));

    Rng rng(307);
    for (int n = 0; n < 200; ++n) {
        const ProjPoint b = half.sample_boundary(rng);
        const ProjPoint image = apply(cayley, b);
        // |z| = 1 in the ball chart
        CHECK(std::abs(ball1.defining_value(image)) <= 1e-10);
        const ProjPoint p = half.sample_interior(rng);
        CHECK(ball1.defining_value(apply(cayley, p)) < 0);
    }

    const Domain parab = Domain::paraboloid(f, 3);
    const Domain ball3 = Domain::ball(f, 3);
    const ProjMap pb = *parab.ball_equivalence();
    for (int n = 0; n < 200; ++n) {
        CHECK(std::abs(ball3.defining_value(apply(pb, parab.sample_boundary(rng)))) <= 1e-10);
        CHECK(ball3.defining_value(apply(pb, parab.sample_interior(rng))) < 0);
    }
}

TEST_CASE("tangent hyperplanes on the quadric models") {
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    const ProjPoint x = ball_chart(f, {Scalar::one(f), Scalar::zero(f)});
    const TangentData td = ball.tangent_hyperplane(x);
    CHECK(vanishes(td.hyperplane, x));
    // Q-dual of [1 : 1 : 0]: the (1, -1, 0) line after canonicalization.
    const DualPoint expected = canonicalize_dual(KVec{Scalar(f, -1), Scalar::one(f), Scalar::zero(f)});
    CHECK(proj_distance(td.hyperplane, expected) <= 1e-12);

    const Domain parab = Domain::paraboloid(f, 2);
    const ProjPoint origin = basis_point(f, 2, 0);
    const TangentData tp = parab.tangent_hyperplane(origin);
    // T_0 is {z1 = 0}: the kernel holds e0 and e2, matching K_P x K^{d-1}.
    CHECK(vanishes(tp.hyperplane, origin));
    CHECK(vanishes(tp.hyperplane, basis_point(f, 2, 2)));
    CHECK(!vanishes(tp.hyperplane, basis_point(f, 2, 1)));

    CHECK_THROWS_AS(ball.tangent_hyperplane(ball.anchor()), validation_error);
}

TEST_CASE("tangent functional matches the first-order gradient") {
    const Domain ball = Domain::ball(Field::Quaternion, 2);
    Rng rng(311);
    double worst = 0;
    for (int n = 0; n < 100; ++n) {
        const ProjPoint x = ball.sample_boundary(rng);
        const DualPoint fx = ball.tangent_hyperplane(x).hyperplane;
        KVec v = rng.gaussian_vector(Field::Quaternion, 3);
        v = sub(v, scale_right(x.rep, inner(x.rep, v)));
        v = scale(v, 1.0 / norm(v));
        const double h = 1e-5;
        const ProjPoint moved = canonicalize(add(scale(x.rep, std::cos(h)), scale(v, std::sin(h))));
        const double slope = abs_pairing(fx, moved) / h;
        const double predicted = abs(inner(fx.rep, v));
        worst = std::max(worst, std::abs(slope - predicted));
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("sec9 symmetries in both conventions") {
    for (Sec9Convention conv : {Sec9Convention::RealPart, Sec9Convention::ImaginaryPart}) {
        const Domain dom = Domain::sec9(Field::Complex, 3, 0.5, conv);
        Rng rng(313);
        const ProjMap t = dom.sec9_symmetry();
        const ProjMap s = dom.sec9_scaling(0.8);
        for (int n = 0; n < 1000; ++n) {
            const ProjPoint p = dom.sample_interior(rng);
            CHECK(dom.defining_value(apply(t, p)) < tol::aut_check);
            CHECK(dom.defining_value(apply(s, p)) < tol::aut_check);
        }
    }
    // the imaginary convention needs an imaginary unit
    CHECK_THROWS_AS(Domain::sec9(Field::Real, 3, 0.5, Sec9Convention::ImaginaryPart), validation_error);
}

TEST_CASE("sec9 with d = 2 degenerates to a quadric graph") {
    const Domain dom = Domain::sec9(Field::Complex, 2);
    Rng rng(317);
    for (int n = 0; n < 200; ++n) {
        const ProjPoint p = dom.sample_interior(rng);
        // chart: Re z1 > 2 |z2|^2 (constant graph factor 2)
        const Scalar z1 = p.rep[1] * inverse(p.rep[0]);
        const Scalar z2 = p.rep[2] * inverse(p.rep[0]);
        CHECK(real_part(z1) > 2.0 * abs2(z2) - 1e-9);
    }
}

TEST_CASE("exact ball dual") {
    const Field f = Field::Complex;
    const BallDual dual = dual_exact_ball(f, 2);
    const DualPoint center = canonicalize_dual(KVec{Scalar::one(f), Scalar::zero(f), Scalar::zero(f)});
    CHECK(dual.membership_residual(center) < 0);
    const DualPoint extreme =
        canonicalize_dual(KVec{Scalar::one(f), Scalar(f, -1), Scalar::zero(f)});
    CHECK(std::abs(dual.membership_residual(extreme)) <= 1e-12);

    // certification sweep: no sampled dual kernel meets the sampled interior
    const Domain ball = Domain::ball(f, 2);
    Rng rng(331);
    std::vector<ProjPoint> interior;
    for (int n = 0; n < 1000; ++n) interior.push_back(ball.sample_interior(rng));
    for (int n = 0; n < 1000; ++n) {
        const DualPoint fd = dual.sample(rng);
        for (const auto& p : interior) CHECK(abs_pairing(fd, p) > tol::dual_cert);
    }
}

TEST_CASE("sampled duals certify and live in the exact dual") {
    const Domain ball = Domain::ball(Field::Complex, 2);
    const DualSample ds = dual_sample(ball, 100, 77, 2000);
    CHECK(ds.complete);
    const BallDual exact = dual_exact_ball(Field::Complex, 2);
    for (const auto& f : ds.functionals) CHECK(exact.membership_residual(f) <= 1e-6);

    const Domain half = Domain::half_space(Field::Quaternion);
    const DualSample hs = dual_sample(half, 50, 78, 2000);
    CHECK(hs.complete);

    const Domain dom = Domain::sec9(Field::Complex, 3);
    Rng rng(79);
    std::vector<ProjPoint> interior;
    for (int n = 0; n < 2000; ++n) interior.push_back(dom.sample_interior(rng));
    const DualPoint fp = dom.tangent_hyperplane(basis_point(Field::Complex, 3, 0)).hyperplane;
    const DualPoint fm = dom.tangent_hyperplane(basis_point(Field::Complex, 3, 1)).hyperplane;
    CHECK(certify_functional(dom, fp, interior));
    CHECK(certify_functional(dom, fm, interior));
    CHECK(proj_distance(fp, fm) > 0.1);
}

TEST_CASE("duality monotonicity and transport") {
    const Field f = Field::Complex;
    const Domain ball = Domain::ball(f, 2);
    Rng rng(83);
    // Interior points of a shrunken ball stay interior, so certified
    // functionals of the big ball certify for the small one.
    KVec d{Scalar::one(f), Scalar(f, 0.45), Scalar(f, 0.45)};
    const ProjMap shrink(KMatrix::diagonal(f, d));
    std::vector<ProjPoint> small_interior;
    for (int n = 0; n < 1500; ++n) small_interior.push_back(apply(shrink, ball.sample_interior(rng)));
    const DualSample ds = dual_sample(ball, 60, 85, 2000);
    for (const auto& fn : ds.functionals) CHECK(certify_functional(ball, fn, small_interior));

    // (phi Omega)* transport keeps certification for an automorphism.
    const ProjMap iso = random_ball_isometry(f, 2, rng);
    std::vector<ProjPoint> interior;
    for (int n = 0; n < 1500; ++n) interior.push_back(ball.sample_interior(rng));
    for (const auto& fn : ds.functionals)
        CHECK(certify_functional(ball, transport_dual(iso, fn), interior));
}

TEST_CASE("boundary distance") {
    const Domain ball = Domain::ball(Field::Complex, 2);
    const ProjPoint center = ball.anchor();
    // d_P from the center to any boundary point is 1/sqrt(2); dense sphere
    // sampling is the oracle.
    Rng rng(89);
    double oracle = 1.0;
    for (int n = 0; n < 4000; ++n) oracle = std::min(oracle, proj_distance(center, ball.sample_boundary(rng)));
    const double delta = ball.boundary_distance(center);
    CHECK(std::abs(delta - oracle) <= 1e-3);
    CHECK(delta <= 1.0 / std::sqrt(2.0) + 1e-9);

    // upper-bound semantics and monotonicity along a ray
    double last = 2;
    for (double r : {0.0, 0.4, 0.8, 0.95}) {
        const ProjPoint p = ball_chart(Field::Complex, {Scalar(Field::Complex, r), Scalar::zero(Field::Complex)});
        const double dr = ball.boundary_distance(p, 32);
        CHECK(dr <= proj_distance(p, ball.sample_boundary(rng)) + 1e-12);
        CHECK(dr <= last + 1e-9);
        last = dr;
    }
    CHECK_THROWS_AS(ball.boundary_distance(basis_point(Field::Complex, 2, 1)), validation_error);
}

TEST_CASE("graph domains from expression trees") {
    // |z1|^2 + |z2|^2 - 1 < 0: the ball as a generic graph domain.
    const char* payload = R"({
        "kind": "graph", "field": "c", "dim": 2, "chart_radius": 1.2,
        "anchor": [[0],[0]],
        "expr": {"op":"sub","args":[
            {"op":"add","args":[{"op":"abs2","args":[{"op":"coord","index":0}]},
                                 {"op":"abs2","args":[{"op":"coord","index":1}]}]},
            {"op":"const","value":1}]}
    })";
    const Domain dom = domain_from_json(json::parse(payload));
    const Domain ball = Domain::ball(Field::Complex, 2);
    Rng rng(97);
    for (int n = 0; n < 300; ++n) {
        const ProjPoint p = dom.sample_interior(rng);
        CHECK(ball.contains(p) == Containment::Inside);
        const ProjPoint b = dom.sample_boundary(rng);
        CHECK(std::abs(ball.defining_value(b)) <= 1e-6);
    }
    // tangents agree with the quadric model's
    const ProjPoint x = dom.sample_boundary(rng);
    CHECK(proj_distance(dom.tangent_hyperplane(x).hyperplane,
                        ball.tangent_hyperplane(ball.project_to_boundary(x)).hyperplane) <= 1e-4);

    // an unbounded defining function is rejected at construction
    const char* unbounded = R"({
        "kind": "graph", "field": "c", "dim": 2, "chart_radius": 1.0,
        "anchor": [[1],[0]],
        "expr": {"op":"neg","args":[{"op":"re","args":[{"op":"coord","index":0}]}]}
    })";
    CHECK_THROWS_AS(domain_from_json(json::parse(unbounded)), validation_error);
}

}  // TEST_SUITE
