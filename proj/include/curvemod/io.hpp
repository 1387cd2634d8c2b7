#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <string>

#include "curvemod/engine.hpp"
#include "curvemod/modular.hpp"

namespace curvemod {

using Json = nlohmann::json;

struct InputDocument {
    GroupData group;
    CoverData cover;
    std::optional<Int> m;
};

namespace io_detail {

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    if (!obj.is_object()) throw Failure(FailureCode::ParseError, where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok)
            throw Failure(FailureCode::ParseError,
                          "unknown field \"" + it.key() + "\" in " + where);
    }
}

inline Int parse_int(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::exception&) {
            throw Failure(FailureCode::ParseError, "bad integer literal in " + where);
        }
    }
    throw Failure(FailureCode::ParseError, "expected an integer in " + where);
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Failure(FailureCode::ParseError,
                      "missing field \"" + std::string(key) + "\" in " + where);
    return *it;
}

}  // namespace io_detail

inline InputDocument parse_document(const Json& doc) {
    using namespace io_detail;
    if (!doc.is_object()) throw Failure(FailureCode::ParseError, "document must be an object");
    check_keys(doc, {"group", "cover", "m"}, "document");

    InputDocument out;
    const Json& grp = require(doc, "group", "document");
    check_keys(grp, {"p", "n", "c", "chi"}, "group");
    out.group.p = parse_int(require(grp, "p", "group"), "group.p");
    out.group.n = static_cast<int>(to_long(parse_int(require(grp, "n", "group"), "group.n")));
    out.group.c = parse_int(require(grp, "c", "group"), "group.c");
    out.group.chi_index = parse_int(require(grp, "chi", "group"), "group.chi");

    const Json& cov = require(doc, "cover", "document");
    check_keys(cov, {"genus_z", "orbits"}, "cover");
    out.cover.genus_z = parse_int(require(cov, "genus_z", "cover"), "cover.genus_z");
    const Json& orbits = require(cov, "orbits", "cover");
    if (!orbits.is_array()) throw Failure(FailureCode::ParseError, "cover.orbits must be an array");
    int index = 0;
    for (const Json& jorbit : orbits) {
        std::string where = "orbit " + std::to_string(index);
        check_keys(jorbit, {"e", "jumps", "tame_order", "phi", "ord_ky"}, where);
        BranchOrbit orbit;
        const Json& jumps = require(jorbit, "jumps", where);
        if (!jumps.is_array())
            throw Failure(FailureCode::ParseError, where + ".jumps must be an array");
        for (const Json& j : jumps) orbit.jumps.push_back(parse_int(j, where + ".jumps"));
        orbit.tame_order = parse_int(require(jorbit, "tame_order", where), where + ".tame_order");
        orbit.phi = parse_int(require(jorbit, "phi", where), where + ".phi");
        if (jorbit.contains("e")) orbit.e = parse_int(jorbit["e"], where + ".e");
        if (jorbit.contains("ord_ky")) orbit.ord_ky = parse_int(jorbit["ord_ky"], where + ".ord_ky");
        out.cover.orbits.push_back(std::move(orbit));
        ++index;
    }

    if (doc.contains("m")) out.m = parse_int(doc["m"], "m");
    return out;
}

inline InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure(FailureCode::ParseError, "cannot open input file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Failure(FailureCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return parse_document(doc);
}

inline Json json_int(const Int& v) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

inline const char* mode_name(const Mode& mode) {
    switch (mode.kind) {
        case Mode::Kind::RiemannRoch: return "riemann-roch";
        case Mode::Kind::PolyDifferential: return "poly-differential";
        case Mode::Kind::Differentials: return "differentials";
    }
    return "?";
}

inline Json decomposition_json(const Decomposition& dec) {
    Json arr = Json::array();
    for (const auto& [label, mult] : dec.entries()) {
        Json entry;
        entry["a"] = json_int(label.a);
        entry["b"] = json_int(label.b);
        entry["multiplicity"] = json_int(mult);
        arr.push_back(entry);
    }
    return arr;
}

inline Json trace_json(const EngineTrace& tr) {
    Json out;
    out["n_I"] = tr.n_I;
    out["filtration_length"] = json_int(tr.p_nI);
    out["layer_dimension"] = json_int(tr.layer);
    out["direct_route"] = tr.direct_route;
    Json orbits = Json::array();
    for (std::size_t i = 0; i < tr.ell_by_t.size(); ++i) {
        Json orbit;
        orbit["wild_length"] = tr.orbit_wild[i];
        Json es = Json::array(), ells = Json::array(), ds = Json::array();
        for (std::size_t t = 0; t < tr.ell_by_t[i].size(); ++t) {
            es.push_back(tr.e_by_t[i][t] ? json_int(*tr.e_by_t[i][t]) : Json());
            ells.push_back(json_int(tr.ell_by_t[i][t]));
            if (!tr.d_by_t[i].empty()) ds.push_back(json_int(tr.d_by_t[i][t]));
        }
        orbit["e_by_t"] = es;
        orbit["ell_by_t"] = ells;
        if (!ds.empty()) orbit["d_by_t"] = ds;
        orbits.push_back(orbit);
    }
    out["orbits"] = orbits;
    Json nj = Json::array();
    for (const auto& v : tr.n_j) nj.push_back(json_int(v));
    out["n_j"] = nj;
    if (!tr.n_j_alt.empty()) {
        Json alt = Json::array();
        for (const auto& v : tr.n_j_alt) alt.push_back(json_int(v));
        out["n_j_alt"] = alt;
        Json deg = Json::array();
        for (const auto& v : tr.deg_Ej) deg.push_back(json_int(v));
        out["deg_Ej"] = deg;
    }
    Json naj = Json::array();
    for (const auto& row : tr.n_aj) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(json_int(v));
        naj.push_back(r);
    }
    out["n_aj"] = naj;
    return out;
}

inline Json result_json(const EngineResult& result, bool with_trace) {
    Json out;
    out["mode"] = mode_name(result.trace.mode);
    if (result.trace.mode.kind == Mode::Kind::PolyDifferential)
        out["m"] = json_int(result.trace.mode.m);
    out["summands"] = decomposition_json(result.decomposition);
    out["total_dimension"] = json_int(total_dimension(result.decomposition));
    out["genus_x"] = json_int(result.trace.genus_x);
    out["genus_y"] = json_int(result.trace.genus_y);
    out["genus_z"] = json_int(result.trace.genus_z);
    if (result.trace.mode.kind != Mode::Kind::Differentials)
        out["degree_e"] = json_int(result.trace.deg_e);
    if (with_trace) out["trace"] = trace_json(result.trace);
    return out;
}

inline Json modular_json(const ModularDecomposition& dec, const AuditReport* audit) {
    Json out;
    out["mode"] = "modular";
    out["ell"] = json_int(dec.params.ell);
    out["m"] = json_int(dec.params.m);
    out["s01"] = dec.s01;
    Json np = Json::array();
    for (const auto& label : dec.nonprojective) {
        Json entry;
        entry["label"] = label.name;
        entry["dimension"] = json_int(label.dimension);
        entry["multiplicity"] = 1;
        np.push_back(entry);
    }
    out["nonprojective"] = np;
    Json proj = Json::array();
    for (std::size_t i = 0; i < dec.simples.size(); ++i) {
        if (dec.projective[i] == 0) continue;
        Json entry;
        entry["label"] = dec.simples[i].name;
        entry["degree"] = json_int(dec.simples[i].degree);
        entry["dim_projective_cover"] = json_int(dec.simples[i].dimP);
        entry["multiplicity"] = json_int(dec.projective[i]);
        proj.push_back(entry);
    }
    out["projective"] = proj;
    out["total_dimension"] = json_int(total_dimension(dec));
    if (audit) {
        Json a;
        a["pass"] = audit->pass;
        a["total"] = json_int(audit->total);
        a["expected"] = json_int(audit->expected);
        a["lines"] = audit->lines;
        out["audit"] = a;
    }
    return out;
}

}  // namespace curvemod
