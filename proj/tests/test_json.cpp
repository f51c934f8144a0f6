#include <catch2/catch_amalgamated.hpp>

#include "kbip/json_io.hpp"

using kbip::EdgeColoring;
using kbip::ordered_json;

TEST_CASE("certificate serialization") {
    const EdgeColoring c = kbip::color_kpp(kbip::make_context(5));

    SECTION("field order is pinned") {
        const std::string text = kbip::certificate_to_string(c);
        CHECK(text.rfind("{\"n\":5,\"num_colors\":7,\"construction\":\"kpp\",\"p\":5,\"x\":2,"
                         "\"edges\":[[0,0,", 0) == 0);
    }
    SECTION("round trip preserves the coloring") {
        const EdgeColoring back = kbip::parse_certificate(kbip::certificate_to_string(c));
        CHECK(back.n == c.n);
        CHECK(back.num_colors == c.num_colors);
        CHECK(back.construction == c.construction);
        CHECK(back.p == c.p);
        CHECK(back.x == c.x);
        CHECK(back.color == c.color);
    }
    SECTION("serialization is deterministic") {
        const EdgeColoring again = kbip::color_kpp(kbip::make_context(5));
        CHECK(kbip::certificate_to_string(c) == kbip::certificate_to_string(again));
    }
    SECTION("edges are sorted by (u, v)") {
        const ordered_json j = kbip::certificate_to_json(c);
        const auto& edges = j["edges"];
        for (std::size_t k = 1; k < edges.size(); ++k) {
            const auto prev = std::pair{edges[k - 1][0].get<int>(), edges[k - 1][1].get<int>()};
            const auto cur = std::pair{edges[k][0].get<int>(), edges[k][1].get<int>()};
            CHECK(prev < cur);
        }
    }
}

TEST_CASE("malformed certificates are rejected") {
    CHECK_THROWS_AS(kbip::parse_certificate("not json"), std::invalid_argument);
    CHECK_THROWS_AS(kbip::parse_certificate("{}"), std::invalid_argument);
    CHECK_THROWS_AS(kbip::parse_certificate(R"({"n":1,"num_colors":1,"edges":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(kbip::parse_certificate(R"({"n":1,"num_colors":1,"edges":[[0,0,5]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        kbip::parse_certificate(R"({"n":1,"num_colors":1,"edges":[[0,1,0]]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        kbip::parse_certificate(R"({"n":2,"num_colors":2,"edges":[[0,0,0],[0,0,1],[1,0,1],[1,1,0]]})"),
        std::invalid_argument);
    // a valid tiny one for contrast
    const EdgeColoring tiny =
        kbip::parse_certificate(R"({"n":1,"num_colors":1,"edges":[[0,0,0]]})");
    CHECK(tiny.n == 1);
}

TEST_CASE("factorization and report serialization") {
    SECTION("factorization schema") {
        const auto f = kbip::p_squared_factorization(kbip::make_context(3));
        const ordered_json j = kbip::factorization_to_json(f);
        CHECK(j["n"] == 9);
        CHECK(j["kind"] == "p_squared");
        CHECK(j["p"] == 3);
        CHECK(j["x"] == 2);
        CHECK(j["matchings"].size() == 9);
        CHECK(j["matchings"][0].size() == 9);

        const auto cyclic = kbip::cyclic_factorization(9);
        const ordered_json jc = kbip::factorization_to_json(cyclic);
        CHECK(jc["kind"] == "cyclic");
        CHECK_FALSE(jc.contains("p"));
    }
    SECTION("p1f report schema") {
        const auto report = kbip::validate_p1f(kbip::cyclic_factorization(9));
        const ordered_json j = kbip::p1f_report_to_json(report);
        CHECK(j["ok"] == false);
        CHECK(j["pairs_checked"] == 36);
        CHECK(!j["failing_pairs"].empty());
        CHECK(j["failing_pairs"][0].contains("cycle_lengths"));
    }
    SECTION("case report schema") {
        const auto ctx = kbip::make_context(5);
        const ordered_json j = kbip::case_report_to_json(kbip::case_report(ctx, 1, 2), 5);
        CHECK(j["a"] == 1);
        CHECK(j["b"] == 2);
        CHECK(j["case"] == "star_star");
        CHECK(j["fixed"].size() == 2);
        CHECK(j["t"] == 3);
        CHECK(j["cycles"][0].contains("len"));
        CHECK(j["cycles"][0].contains("class2"));
        const ordered_json j00 = kbip::case_report_to_json(kbip::case_report(ctx, 0, 0), 5);
        CHECK_FALSE(j00.contains("t"));
        CHECK(j00["fixed"] == ordered_json::array({0, 0}));
    }
    SECTION("verification report schema") {
        const auto ctx = kbip::make_context(3);
        const auto report = kbip::check_acyclic(kbip::color_kp2(ctx, true));
        const ordered_json j = kbip::verification_report_to_json(report);
        CHECK(j["proper"] == true);
        CHECK(j["acyclic"] == false);
        REQUIRE(j.contains("bichromatic_witness"));
        CHECK(j["bichromatic_witness"]["colors"].size() == 2);
        CHECK(j["bichromatic_witness"]["cycle"].size() >= 4);
    }
}
