#include <catch2/catch_amalgamated.hpp>

#include "heismoeb/json_io.hpp"

using namespace heismoeb;

TEST_CASE("point serialization round-trips") {
    RngStream rng(301);
    for (Field f : {Field::R, Field::C, Field::H, Field::O}) {
        std::size_t m = f == Field::O ? 1 : 2;
        for (int t = 0; t < 100; ++t) {
            HPoint p = random_hpoint(f, m, rng, 5.0);
            HPoint back = hpoint_from_json(hpoint_to_json(p), f);
            REQUIRE(approx_eq(p, back, 0.0));
        }
    }
    BoundaryPoint inf = BoundaryPoint::infinity();
    REQUIRE(boundary_from_json(boundary_to_json(inf), Field::C).is_infinity());
}

TEST_CASE("point schema is validated") {
    REQUIRE_THROWS_AS(hpoint_from_json(json::parse(R"({"zeta":[[1,0]]})"), Field::C), Error);
    // the real coefficient of v must be present and zero
    REQUIRE_THROWS_AS(hpoint_from_json(json::parse(R"({"zeta":[[1,0]],"v":[1,0]})"), Field::C),
                      Error);
    REQUIRE_THROWS_AS(hpoint_from_json(json::parse(R"({"zeta":[[1,0,0]],"v":[0,1]})"), Field::C),
                      Error);
    REQUIRE_THROWS_AS(boundary_from_json(json::parse(R"({"inf":false})"), Field::C), Error);
}

TEST_CASE("map serialization round-trips through application") {
    RngStream rng(307);
    for (Field f : {Field::R, Field::C, Field::H, Field::O}) {
        std::size_t m = f == Field::O ? 1 : 2;
        for (int t = 0; t < 40; ++t) {
            MoebiusMap w = random_word(f, m, 5, rng);
            MoebiusMap back = map_from_json(map_to_json(w), f, m);
            BoundaryPoint p(random_hpoint(f, m, rng, 2.0));
            REQUIRE(approx_eq(apply_map(w, p), apply_map(back, p), 1e-12));
        }
    }
    REQUIRE_THROWS_AS(map_from_json(json::parse(R"([{"warp":1}])"), Field::C, 1), Error);
}

TEST_CASE("generator JSON spellings") {
    json word = json::parse(R"([
        {"dilate": 2.0},
        {"translate": {"zeta": [[1,0]], "v": [0,0]}},
        {"invert": true},
        {"conjugate": true}
    ])");
    MoebiusMap w = map_from_json(word, Field::C, 1);
    REQUIRE(w.word.size() == 4);
    REQUIRE(nominal_similarity_factor(w) == 2.0);
}

TEST_CASE("metric model serialization") {
    auto kp = metric_from_json(json::parse(R"({"kind":"koranyi_power","alpha":0.5,"beta":2.0})"),
                               Field::C, 1);
    REQUIRE(kp.kind == MetricKind::KoranyiPower);
    REQUIRE(kp.alpha == 0.5);
    REQUIRE(kp.beta == 2.0);
    json back = metric_to_json(kp);
    REQUIRE(back["kind"] == "koranyi_power");

    auto cc = metric_from_json(json::parse(R"({"kind":"cc_h1","gauge_norm":"scaled16"})"),
                               Field::C, 1);
    REQUIRE(cc.gauge_norm == CcGaugeNorm::Scaled16);

    auto eu = metric_from_json(json::parse(R"({"kind":"euclidean_r","n":3})"), Field::R, 2);
    REQUIRE(eu.dim == 2);

    REQUIRE_THROWS_AS(metric_from_json(json::parse(R"({"kind":"mystery"})"), Field::C, 1), Error);
    REQUIRE_THROWS_AS(
        metric_from_json(json::parse(R"({"kind":"cc_h1","gauge_norm":"other"})"), Field::C, 1),
        Error);
}

TEST_CASE("report documents carry config, suites and version") {
    RunConfig cfg;
    cfg.field = Field::H;
    cfg.n = 3;
    cfg.seed = 7;
    ConditionReport rep;
    rep.condition = "Sim";
    rep.verdict = Verdict::Pass;
    rep.constants["x"] = 1.5;
    rep.samples = 10;
    rep.seed = 7;
    json doc = make_report_document(cfg, json::array({report_to_json(rep)}));
    REQUIRE(doc["version"] == kVersion);
    REQUIRE(doc["config"]["field"] == "H");
    REQUIRE(doc["suites"][0]["condition"] == "Sim");
    REQUIRE(doc["suites"][0]["verdict"] == "pass");
    REQUIRE(doc["suites"][0]["seed"] == 7);
}

TEST_CASE("witnesses serialize with remote points intact") {
    ConditionWitness w;
    w.points = {BoundaryPoint::infinity(), BoundaryPoint(h_origin(Field::C, 1))};
    w.residual = 0.25;
    json j = witness_to_json(w);
    REQUIRE(j["points"][0]["inf"] == true);
    REQUIRE(j["points"][1]["v"][0] == 0.0);
}

TEST_CASE("matrix serialization is stable and text renders") {
    auto zoo = default_zoo(Field::R, 2);
    auto m1 = run_classification(zoo, 200, 99);
    auto m2 = run_classification(zoo, 200, 99);
    REQUIRE(matrix_to_json(m1).dump() == matrix_to_json(m2).dump());
    std::string text = matrix_to_text(m1);
    REQUIRE(text.find("AlphaMet") != std::string::npos);
    REQUIRE(text.find("euclidean_r") != std::string::npos);
}

TEST_CASE("run config validation") {
    RunConfig cfg;
    cfg.field = Field::O;
    cfg.n = 3;
    REQUIRE_THROWS_AS(cfg.validate(), Error);
    cfg.n = 2;
    REQUIRE_NOTHROW(cfg.validate());
    cfg.samples = 0;
    REQUIRE_THROWS_AS(cfg.validate(), Error);
}
