#include <catch_amalgamated.hpp>

#include "curvemod/io.hpp"
#include "curvemod/synthetic.hpp"

using namespace curvemod;

TEST_CASE("parse a full document") {
    Json doc = Json::parse(R"({
      "group": {"p": 7, "n": 1, "c": 12, "chi": 2},
      "cover": {"genus_z": 0, "orbits": [
        {"jumps": [], "tame_order": 12, "phi": 11, "ord_ky": 11},
        {"jumps": [], "tame_order": 2, "phi": 1, "ord_ky": 1},
        {"jumps": [2], "tame_order": 12, "phi": 7, "ord_ky": -13, "e": -146}
      ]},
      "m": 2
    })");
    InputDocument in = parse_document(doc);
    CHECK(in.group.p == 7);
    CHECK(in.group.chi_index == 2);
    CHECK(in.cover.orbits.size() == 3);
    CHECK(in.cover.orbits[2].jumps == std::vector<Int>{2});
    CHECK(*in.cover.orbits[2].e == -146);
    CHECK(*in.m == 2);

    // schema is strict
    doc["cover"]["orbits"][0]["tame_oder"] = 3;
    CHECK_THROWS_AS(parse_document(doc), Failure);
}

TEST_CASE("unknown and missing fields are rejected") {
    Json doc = Json::parse(R"({"group": {"p": 3, "n": 0, "c": 1, "chi": 0},
                               "cover": {"genus_z": 2, "orbits": []}, "extra": 1})");
    CHECK_THROWS_AS(parse_document(doc), Failure);

    Json missing = Json::parse(R"({"group": {"p": 3, "n": 0, "c": 1},
                                   "cover": {"genus_z": 2, "orbits": []}})");
    CHECK_THROWS_AS(parse_document(missing), Failure);

    Json badint = Json::parse(R"({"group": {"p": 3, "n": 0, "c": 1, "chi": "x"},
                                  "cover": {"genus_z": 2, "orbits": []}})");
    CHECK_THROWS_AS(parse_document(badint), Failure);
}

TEST_CASE("malformed documents never crash the parser") {
    for (const char* text : {
             R"({"group": 3, "cover": {"genus_z": 0, "orbits": []}})",
             R"({"group": {"p": 3, "n": 0, "c": 1, "chi": 0}, "cover": {"genus_z": 0, "orbits": 3}})",
             R"({"group": {"p": 3, "n": 0, "c": 1, "chi": 0},
                 "cover": {"genus_z": 0, "orbits": [{"jumps": 2, "tame_order": 1, "phi": 0}]}})",
             R"({"group": {"p": 3, "n": 0, "c": 1, "chi": 0},
                 "cover": {"genus_z": 0, "orbits": [{"jumps": [], "tame_order": 1, "phi": 0}]},
                 "m": true})",
             R"({"group": {"p": 3.5, "n": 0, "c": 1, "chi": 0},
                 "cover": {"genus_z": 0, "orbits": []}})",
             R"({"group": {"p": 3, "n": 0, "c": 1, "chi": 0},
                 "cover": {"genus_z": 0, "orbits": [{"jumps": [], "tame_order": 1, "phi": 0,
                                                     "e": "12x"}]}})",
         }) {
        INFO(text);
        CHECK_THROWS_AS(parse_document(Json::parse(text)), Failure);
    }
}

TEST_CASE("big integers may be passed as strings") {
    Json doc = Json::parse(R"({
      "group": {"p": 5, "n": 1, "c": 1, "chi": 0},
      "cover": {"genus_z": 2, "orbits": [
        {"jumps": [], "tame_order": 1, "phi": 0, "e": "123456789012345678901234567890"}
      ]}
    })");
    InputDocument in = parse_document(doc);
    CHECK(*in.cover.orbits[0].e == Int("123456789012345678901234567890"));
}

TEST_CASE("result serialization mirrors the decomposition") {
    auto sc = synthetic_cases(7u, 1).front();
    EngineResult result = decompose_riemann_roch(sc.group, sc.cover);
    Json out = result_json(result, true);
    CHECK(out["mode"] == "riemann-roch");
    CHECK(out["summands"].size() == result.decomposition.size());
    Int total = 0;
    for (const auto& entry : out["summands"])
        total += Int(entry["b"].get<long long>()) * Int(entry["multiplicity"].get<long long>());
    CHECK(total == total_dimension(result.decomposition));
    CHECK(out.contains("trace"));
    CHECK(out["trace"]["n_j"].size() == result.trace.n_j.size());
}

TEST_CASE("modular serialization") {
    ModularDecomposition dec = modular_decomposition(7, 3);
    AuditReport audit = dimension_audit(7, 3);
    Json out = modular_json(dec, &audit);
    CHECK(out["total_dimension"] == 10);
    CHECK(out["audit"]["pass"] == true);
    REQUIRE(out["nonprojective"].size() == 1);
    CHECK(out["nonprojective"][0]["label"] == "U(T1;1)");
    REQUIRE(out["projective"].size() == 1);
    CHECK(out["projective"][0]["label"] == "gamma_2");
}
