#include <doctest.h>

#include "kproj/moebius.hpp"

using namespace kproj;

namespace {

// Direct affine formula (a z + b)(c z + d)^{-1}, used as the oracle for the
// homogeneous-lift implementation.
Scalar affine_formula(const MoebiusMap& m, const Scalar& z) {
    return rdiv(m.a * z + m.b, m.c * z + m.d);
}

MoebiusMap random_map(Field f, Rng& rng) {
    for (;;) {
        const MoebiusMap m{rng.gaussian_scalar(f), rng.gaussian_scalar(f), rng.gaussian_scalar(f),
                           rng.gaussian_scalar(f)};
        if (det_abs(m.matrix()) > 0.05) return m;
    }
}

}  // namespace

TEST_SUITE("moebius") {

TEST_CASE("the Cayley map sends 1 to 0 and fixes the identification") {
    const Field f = Field::Quaternion;
    const MoebiusMap cayley = MoebiusMap::cayley(f);
    const ExtendedScalar w = apply(cayley, ExtendedScalar::finite(Scalar::one(f)));
    CHECK(!w.infinite);
    CHECK(abs(w.z) == doctest::Approx(0.0));

    const MoebiusMap id = MoebiusMap::identity(f);
    Rng rng(501);
    for (int n = 0; n < 100; ++n) {
        const Scalar z = rng.gaussian_scalar(f);
        const ExtendedScalar out = apply(id, ExtendedScalar::finite(z));
        CHECK(abs(out.z - z) <= 1e-14);
    }
    // [z : 1] -> z and [1 : 0] -> infinity round trip
    CHECK(from_projective(to_projective(ExtendedScalar::infinity(f), f)).infinite);
}

TEST_CASE("homogeneous action matches the affine formula and composes") {
    const Field f = Field::Quaternion;
    Rng rng(503);
    for (int n = 0; n < 10000; ++n) {
        const MoebiusMap m = random_map(f, rng);
        const Scalar z = rng.gaussian_scalar(f);
        if (abs(m.c * z + m.d) < 1e-4) continue;
        const ExtendedScalar got = apply(m, ExtendedScalar::finite(z));
        REQUIRE(!got.infinite);
        CHECK(abs(got.z - affine_formula(m, z)) <= 1e-10 * (1 + abs(got.z)));
    }
    for (int n = 0; n < 300; ++n) {
        const MoebiusMap m1 = random_map(f, rng), m2 = random_map(f, rng);
        const Scalar z = rng.gaussian_scalar(f);
        const ExtendedScalar lhs = apply(m1 * m2, ExtendedScalar::finite(z));
        const ExtendedScalar rhs = apply(m1, apply(m2, ExtendedScalar::finite(z)));
        if (lhs.infinite || rhs.infinite) continue;
        CHECK(abs(lhs.z - rhs.z) <= 1e-11 * (1 + abs(lhs.z)));
    }
    // infinity is handled through the lift
    const MoebiusMap m = random_map(f, rng);
    const ExtendedScalar at_inf = apply(m, ExtendedScalar::infinity(f));
    if (!at_inf.infinite) CHECK(abs(at_inf.z - rdiv(m.a, m.c)) <= 1e-10 * (1 + abs(at_inf.z)));
}

TEST_CASE("unipotent translations scale the real part as the chart predicts") {
    const Field f = Field::Quaternion;
    Rng rng(507);
    for (int n = 0; n < 500; ++n) {
        const Scalar w = rng.imaginary_scalar(f, 1.5);
        const Scalar z = rng.gaussian_scalar(f);
        // lower-triangular u_w: z -> z (1 + w z)^{-1}
        const MoebiusMap uw{Scalar::one(f), Scalar::zero(f), w, Scalar::one(f)};
        if (abs(w * z + Scalar::one(f)) < 1e-3) continue;
        const ExtendedScalar img = apply(uw, ExtendedScalar::finite(z));
        const double predicted = real_part(z) / abs2(Scalar::one(f) + w * z);
        CHECK(real_part(img.z) == doctest::Approx(predicted).epsilon(1e-10));
    }
}

TEST_CASE("sphere and plane transport") {
    const Field f = Field::Quaternion;
    // The Cayley image of the boundary plane Re z = 0 is the unit sphere.
    const SpherePlane boundary = SpherePlane::plane(Scalar::one(f), 0.0);
    CHECK(boundary.is_plane());
    const SpherePlane image = map_sphereplane(MoebiusMap::cayley(f), boundary, 17);
    CHECK(!image.is_plane());
    Rng rng(509);
    for (int n = 0; n < 100; ++n)
        CHECK(image.residual(rng.unit_scalar(f)) <= 1e-8);  // unit sphere points satisfy the locus

    // identity transport reproduces the locus up to the gauge
    const SpherePlane sph = SpherePlane::sphere(Scalar(f, 0.5, -1, 0.25, 0), 1.4);
    const SpherePlane same = map_sphereplane(MoebiusMap::identity(f), sph, 19);
    for (int n = 0; n < 100; ++n) CHECK(same.residual(sph.sample(rng)) <= 1e-8);

    for (int n = 0; n < 5; ++n) {
        Rng mr(521 + n);
        const MoebiusMap m = random_map(f, mr);
        const SpherePlane s = SpherePlane::sphere(mr.gaussian_scalar(f), mr.uniform(0.5, 1.5));
        const SpherePlane out = map_sphereplane(m, s, 523 + n);
        for (int k = 0; k < 50; ++k) {
            const ExtendedScalar w = apply(m, ExtendedScalar::finite(s.sample(mr)));
            if (w.infinite || abs(w.z) > 1e5) continue;
            CHECK(out.residual(w.z) <= 1e-7);
        }
    }
}

TEST_CASE("half-space membership normal forms") {
    const Field f = Field::Quaternion;
    Rng rng(531);
    for (int n = 0; n < 50; ++n) {
        Scalar mu = rng.gaussian_scalar(f);
        if (abs(mu) < 0.1) mu = Scalar::one(f);
        const Scalar w = rng.imaginary_scalar(f, 2.0);
        // (mu, mu w; 0, conj(mu)^{-1}) acts by z -> mu (z + w) conj(mu)
        const MoebiusMap p_inf{mu, mu * w, Scalar::zero(f), inverse(conj(mu))};
        const auto rep = halfspace_aut_membership(p_inf);
        CHECK(rep.member);
        CHECK(rep.normal_form == "p_inf");
        // and its swap conjugate fixes 0
        const MoebiusMap p0{inverse(conj(mu)), Scalar::zero(f), mu * w, mu};
        CHECK(halfspace_aut_membership(p0).member);
    }
    // z -> -z flips the half-space
    const MoebiusMap flip{Scalar(f, -1), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};
    CHECK(!halfspace_aut_membership(flip).member);
    // z -> 2z + 1 maps it strictly inside itself: not onto, so not an automorphism
    const MoebiusMap shift{Scalar(f, 2), Scalar::one(f), Scalar::zero(f), Scalar::one(f)};
    CHECK(!halfspace_aut_membership(shift).member);
    // a translation with a real part fails the exact triangular test
    const MoebiusMap bad{Scalar::one(f), Scalar(f, 0.3, 1, 0, 0), Scalar::zero(f), Scalar::one(f)};
    CHECK(!halfspace_aut_membership(bad).member);
}

TEST_CASE("U/V generator words") {
    const Field f = Field::Quaternion;
    CHECK(frobenius_norm(generate_from_UV(f, {}).matrix() - KMatrix::identity(f, 2)) == 0.0);

    Rng rng(541);
    const Scalar w = rng.imaginary_scalar(f, 1.0);
    const MoebiusMap u = generate_from_UV(f, {{UVKind::U, w}});
    for (int n = 0; n < 50; ++n) {
        const Scalar z = rng.gaussian_scalar(f);
        const ExtendedScalar img = apply(u, ExtendedScalar::finite(z));
        CHECK(abs(img.z - (z + w)) <= 1e-13);
        CHECK(real_part(img.z) == doctest::Approx(real_part(z)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(generate_from_UV(f, {{UVKind::V, Scalar::one(f)}}), validation_error);

    for (int n = 0; n < 100; ++n) {
        std::vector<std::pair<UVKind, Scalar>> word;
        const int len = rng.uniform_int(1, 10);
        for (int i = 0; i < len; ++i)
            word.emplace_back(rng.uniform_int(0, 1) ? UVKind::U : UVKind::V, rng.imaginary_scalar(f, 1.0));
        CHECK(halfspace_aut_membership(generate_from_UV(f, word), 300, 543 + n).member);
    }
}

TEST_CASE("Cayley conjugates of U/V words preserve the unit disk") {
    const Field f = Field::Quaternion;
    const MoebiusMap cayley = MoebiusMap::cayley(f);
    const MoebiusMap cayley_inv = inverse(cayley);
    Rng rng(547);
    for (int n = 0; n < 30; ++n) {
        std::vector<std::pair<UVKind, Scalar>> word;
        for (int i = 0; i < 6; ++i)
            word.emplace_back(rng.uniform_int(0, 1) ? UVKind::U : UVKind::V, rng.imaginary_scalar(f, 1.0));
        const MoebiusMap disk_map = cayley * generate_from_UV(f, word) * cayley_inv;
        const MoebiusMap disk_inv = inverse(disk_map);
        for (int k = 0; k < 100; ++k) {
            const Scalar z = rng.unit_scalar(f) * rng.uniform(0.0, 0.999);
            const ExtendedScalar img = apply(disk_map, ExtendedScalar::finite(z));
            REQUIRE(!img.infinite);
            CHECK(abs(img.z) < 1.0 + 1e-10);
            const ExtendedScalar pre = apply(disk_inv, ExtendedScalar::finite(z));
            REQUIRE(!pre.infinite);
            CHECK(abs(pre.z) < 1.0 + 1e-10);
        }
    }
}

TEST_CASE("transitivity evidence for the parabolic subgroups") {
    const Field f = Field::Quaternion;
    Rng rng(557);
    for (int n = 0; n < 100; ++n) {
        // boundary point to 0 by a translation in P_inf
        const Scalar x = rng.imaginary_scalar(f, 2.0);
        const MoebiusMap to_zero = generate_from_UV(f, {{UVKind::U, -x}});
        CHECK(abs(apply(to_zero, ExtendedScalar::finite(x)).z) <= 1e-13);

        // interior point to 1 by translation then dilation
        const Scalar z0 = Scalar(f, rng.uniform(0.05, 4.0)) + rng.imaginary_scalar(f, 1.5);
        const double s = real_part(z0);
        const Scalar mu = Scalar(f, 1.0 / std::sqrt(s));
        const MoebiusMap dilate{mu, Scalar::zero(f), Scalar::zero(f), inverse(conj(mu))};
        const MoebiusMap move = dilate * generate_from_UV(f, {{UVKind::U, -imag_part(z0)}});
        CHECK(abs(apply(move, ExtendedScalar::finite(z0)).z - Scalar::one(f)) <= 1e-12);
        CHECK(halfspace_aut_membership(move).member);
    }
}

}  // TEST_SUITE
