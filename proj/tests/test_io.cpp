#include <catch2/catch_amalgamated.hpp>

#include "crw/config_io.hpp"
#include "crw/verify.hpp"

using namespace crw;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("model_from_json reads both config forms") {
    const PathCRWModel full = model_from_json(json::parse(
        R"({"n": 1, "coins": [{"p_L": 0.7, "p_R": 0.2}, {"p_L": 0.7, "p_R": 0.2}]})"));
    CHECK(full.n == 1);
    CHECK_THAT(full.family.nu2, Catch::Matchers::WithinAbs(0.5, 1e-15));

    const PathCRWModel shorthand =
        model_from_json(json::parse(R"({"n": 3, "coin": {"p_L": 0.7, "p_R": 0.2}})"));
    CHECK(shorthand.n == 3);
    CHECK(shorthand.family.coins.size() == 4);
    for (const CoinParams& c : shorthand.family.coins) {
        CHECK(c.p_L == 0.7);
        CHECK(c.p_R == 0.2);
    }
}

TEST_CASE("model_from_json rejects malformed documents") {
    CHECK_THROWS_AS(model_from_json(json::parse(R"([1,2,3])")), ParseError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"coin": {"p_L": 0.7, "p_R": 0.2}})")),
                    ParseError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": 1})")), ParseError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": 1, "coin": {"p_L": 0.7}})")),
                    ParseError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"n": -2, "coin": {"p_L": 0.7, "p_R": 0.2}})")),
                    ParseError);

    // validation failures surface the offending vertex
    try {
        model_from_json(json::parse(
            R"({"n": 1, "coins": [{"p_L": 0.7, "p_R": 0.2}, {"p_L": 1.0, "p_R": 0.5}]})"));
        FAIL("expected OutOfRangeError");
    } catch (const OutOfRangeError& e) {
        CHECK(e.vertex == 1);
        CHECK_THAT(e.what(), ContainsSubstring("vertex 1"));
    }
}

TEST_CASE("model round-trips through its JSON form") {
    const PathCRWModel model = validate_model({{0.7, 0.2}, {0.6, 0.1}, {0.8, 0.3}}, 2);
    const PathCRWModel back = model_from_json(model_to_json(model));
    CHECK(back.n == model.n);
    CHECK(back.family.nu2 == model.family.nu2);
    for (std::size_t x = 0; x <= model.n; ++x) {
        CHECK(back.family.coins[x].p_L == model.family.coins[x].p_L);
        CHECK(back.family.coins[x].p_R == model.family.coins[x].p_R);
    }
}

TEST_CASE("decomposition serializes with tags and both vector families") {
    const PathCRWModel model = homogeneous_model(0.7, 0.2, 1);
    const json doc = decomposition_to_json(full_decomposition(model));
    CHECK_THAT(doc["nu2"].get<double>(), Catch::Matchers::WithinAbs(0.5, 1e-15));
    REQUIRE(doc["pairs"].size() == 4);
    CHECK(doc["pairs"][0]["tag"] == "stationary");
    CHECK(doc["pairs"][3]["tag"] == "alternating");
    for (const json& p : doc["pairs"]) {
        CHECK(p["u"].size() == 4);
        CHECK(p["q"].size() == 4);
        CHECK(p.contains("mu"));
        CHECK(p.contains("source_index"));
    }
}

TEST_CASE("distribution CSV uses the vertex,probability layout") {
    const std::string csv = distribution_to_csv({0.25, 0.75});
    CHECK(csv == "vertex,probability\n0,0.25\n1,0.75\n");
}

TEST_CASE("RunReport round-trips exactly") {
    RunReport report;
    report.command = "spectrum";
    report.n = 3;
    report.nu2 = -0.125;
    report.digest = "abc123";
    report.results = {{"spec_B", {0.5, -0.5, -1.0}}, {"note", "fixture"}};
    report.passed = true;
    report.wall_time_ms = 1.25;

    const RunReport back = RunReport::from_json(report.to_json());
    CHECK(back == report);
    CHECK(RunReport::from_json(back.to_json()).to_json() == report.to_json());
}

TEST_CASE("coin digests separate different models") {
    const PathCRWModel a = homogeneous_model(0.7, 0.2, 2);
    const PathCRWModel b = homogeneous_model(0.7, 0.2, 3);
    const PathCRWModel c = homogeneous_model(0.6, 0.1, 2);
    CHECK(coin_digest(a) == coin_digest(homogeneous_model(0.7, 0.2, 2)));
    CHECK(coin_digest(a) != coin_digest(b));
    CHECK(coin_digest(a) != coin_digest(c));
}
