#include <doctest.h>

#include <sstream>

#include "kproj/cli.hpp"
#include "kproj/json_io.hpp"

using namespace kproj;

TEST_SUITE("json") {

TEST_CASE("scalar and matrix payloads round trip") {
    Rng rng(701);
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        for (int n = 0; n < 100; ++n) {
            const Scalar s = rng.gaussian_scalar(f);
            CHECK(scalar_from_json(scalar_to_json(s), f) == s);
        }
        KMatrix m(f, 3, 2);
        for (auto& s : m.a) s = rng.gaussian_scalar(f);
        const KMatrix back = matrix_from_json(matrix_to_json(m));
        CHECK(back.rows == 3);
        CHECK(back.cols == 2);
        CHECK(frobenius_norm(back - m) == 0.0);
    }
    CHECK_THROWS_AS(scalar_from_json(json::array({1, 2}), Field::Real), validation_error);
    CHECK_THROWS_AS(field_from_code("x"), validation_error);
}

TEST_CASE("points carry their duality flag") {
    Rng rng(703);
    const ProjPoint p = canonicalize(rng.gaussian_vector(Field::Quaternion, 3));
    const json jp = point_to_json(p);
    CHECK(!jp.contains("dual"));
    CHECK(points_equal(point_from_json(jp), p));

    const DualPoint f = canonicalize_dual(rng.gaussian_vector(Field::Quaternion, 3));
    const json jf = dual_to_json(f);
    CHECK(jf.at("dual").get<bool>());
    CHECK(proj_distance(dual_from_json(jf), f) <= 1e-14);
}

TEST_CASE("domains round trip through their descriptors") {
    for (const Domain& dom :
         {Domain::ball(Field::Complex, 2), Domain::half_space(Field::Quaternion),
          Domain::paraboloid(Field::Real, 3),
          Domain::sec9(Field::Complex, 3, 0.7, Sec9Convention::ImaginaryPart)}) {
        const Domain back = domain_from_json(domain_to_json(dom));
        CHECK(back.kind() == dom.kind());
        CHECK(back.field() == dom.field());
        CHECK(back.dim() == dom.dim());
        Rng rng(707);
        for (int n = 0; n < 50; ++n) {
            const ProjPoint p = dom.sample_interior(rng);
            CHECK(back.defining_value(p) == doctest::Approx(dom.defining_value(p)).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(domain_from_json(json{{"kind", "torus"}, {"field", "c"}, {"dim", 2}}),
                    validation_error);
}

TEST_CASE("serialized artifacts are byte-stable") {
    Rng rng(709);
    KMatrix m(Field::Complex, 3, 3);
    for (auto& s : m.a) s = rng.gaussian_scalar(Field::Complex);
    const ProximalClass cls = classify(ProjMap(m * m + KMatrix::identity(Field::Complex, 3) * 4.0));
    CHECK(proximal_to_json(cls).dump(2) == proximal_to_json(cls).dump(2));
}

TEST_CASE("cli dispatch: distance, errors, exit codes") {
    const std::string ball = domain_to_json(Domain::ball(Field::Complex, 2)).dump();
    std::ostringstream out, err;
    const int rc = cli::dispatch(
        {"dist", "--domain", ball, "--p", "[[1],[0],[0]]", "--q", "[[1],[0.5],[0]]"}, out, err);
    REQUIRE(rc == 0);
    const json payload = json::parse(out.str());
    CHECK(payload.at("value").get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(payload.at("kind") == "exact");

    std::ostringstream out2, err2;
    CHECK(cli::dispatch({"dist", "--domain", ball, "--p", "[[1],[0],[0]]", "--q", "[[1],[2],[0]]"},
                        out2, err2) == 2);  // outside the ball: validation error

    std::ostringstream out3, err3;
    CHECK(cli::dispatch({"nonsense"}, out3, err3) == 2);

    std::ostringstream out4, err4;
    CHECK(cli::dispatch({"verify", "--show-config"}, out4, err4) == 0);
    CHECK(out4.str().find("boundary_band") != std::string::npos);
}

TEST_CASE("cli dispatch: classify and moebius") {
    KVec d{Scalar(Field::Real, 2), Scalar::one(Field::Real), Scalar(Field::Real, 0.5)};
    const std::string diag = matrix_to_json(KMatrix::diagonal(Field::Real, d)).dump();
    std::ostringstream out, err;
    REQUIRE(cli::dispatch({"classify", "--matrix", diag}, out, err) == 0);
    const json payload = json::parse(out.str());
    CHECK(payload.at("variant") == "bi_proximal");

    const std::string cayley = matrix_to_json(MoebiusMap::cayley(Field::Quaternion).matrix()).dump();
    std::ostringstream out2, err2;
    REQUIRE(cli::dispatch({"moebius", "apply", "--field", "h", "--matrix", cayley, "--z", "[1]"},
                          out2, err2) == 0);
    const json moved = json::parse(out2.str());
    CHECK(!moved.at("infinite").get<bool>());
    for (const auto& c : moved.at("z")) CHECK(std::abs(c.get<double>()) <= 1e-14);

    std::ostringstream out3, err3;
    REQUIRE(cli::dispatch({"moebius", "check-halfspace", "--field", "c", "--matrix", cayley}, out3,
                          err3) == 0);
    CHECK(!json::parse(out3.str()).at("member").get<bool>());  // Cayley moves the half-space
}

TEST_CASE("cli dispatch: csv orbit dumps") {
    KVec d{Scalar(Field::Real, 2), Scalar::one(Field::Real), Scalar(Field::Real, 0.5)};
    const std::string diag = matrix_to_json(KMatrix::diagonal(Field::Real, d)).dump();
    std::ostringstream out, err;
    REQUIRE(cli::dispatch({"iterate", "--matrix", diag, "--point", "[[1],[1],[1]]", "--steps", "4",
                           "--format", "csv"},
                          out, err) == 0);
    int lines = 0;
    for (char c : out.str()) lines += (c == '\n');
    CHECK(lines == 5);
}

}  // TEST_SUITE
