#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kbip/analysis.hpp"
#include "kbip/coloring.hpp"
#include "kbip/factorization.hpp"
#include "kbip/graph_types.hpp"
#include "kbip/verify.hpp"

// JSON artifacts. Certificates carry a fixed field order and sorted edge
// lists so identical runs serialize to identical bytes.

namespace kbip {

using ordered_json = nlohmann::ordered_json;

/// {"n":, "num_colors":, "construction":, "p"?, "x"?, "edges": [[u,v,color]...]}
/// with edges sorted by (u,v).
inline ordered_json certificate_to_json(const EdgeColoring& c) {
    ordered_json j;
    j["n"] = c.n;
    j["num_colors"] = c.num_colors;
    j["construction"] = c.construction;
    if (c.p)
        j["p"] = *c.p;
    if (c.x)
        j["x"] = *c.x;
    auto edges = ordered_json::array();
    for (int u = 0; u < c.n; ++u)
        for (int v = 0; v < c.n; ++v)
            edges.push_back({u, v, c.at(u, v)});
    j["edges"] = std::move(edges);
    return j;
}

inline std::string certificate_to_string(const EdgeColoring& c) {
    return certificate_to_json(c).dump() + "\n";
}

/// Parses and fully validates a certificate; throws std::invalid_argument on
/// anything malformed (bad JSON, missing edges, out-of-range colors).
inline EdgeColoring certificate_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("num_colors") || !j.contains("edges"))
        throw std::invalid_argument("certificate: missing n/num_colors/edges");
    if (!j["n"].is_number_integer() || !j["num_colors"].is_number_integer() ||
        !j["edges"].is_array())
        throw std::invalid_argument("certificate: wrong field types");
    EdgeColoring c;
    c.n = j["n"].get<int>();
    c.num_colors = j["num_colors"].get<int>();
    if (c.n < 1 || c.num_colors < 1)
        throw std::invalid_argument("certificate: non-positive dimensions");
    if (j.contains("construction") && j["construction"].is_string())
        c.construction = j["construction"].get<std::string>();
    if (j.contains("p") && j["p"].is_number_integer())
        c.p = j["p"].get<int>();
    if (j.contains("x") && j["x"].is_number_integer())
        c.x = j["x"].get<int>();
    const std::size_t expected =
        static_cast<std::size_t>(c.n) * static_cast<std::size_t>(c.n);
    if (j["edges"].size() != expected)
        throw std::invalid_argument("certificate: expected n^2 edges");
    c.color.assign(expected, -1);
    for (const auto& entry : j["edges"]) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number_integer())
            throw std::invalid_argument("certificate: edge entries must be [u, v, color]");
        const int u = entry[0].get<int>(), v = entry[1].get<int>(), col = entry[2].get<int>();
        if (u < 0 || u >= c.n || v < 0 || v >= c.n)
            throw std::invalid_argument("certificate: edge endpoint out of range");
        if (col < 0 || col >= c.num_colors)
            throw std::invalid_argument("certificate: color out of range");
        if (c.at(u, v) != -1)
            throw std::invalid_argument("certificate: duplicate edge");
        c.at(u, v) = col;
    }
    return c;
}

inline EdgeColoring parse_certificate(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("certificate: invalid JSON: ") + e.what());
    }
    return certificate_from_json(j);
}

/// {"n":, "kind":, "p"?, "x"?, "matchings": [[images...]...]}
inline ordered_json factorization_to_json(const Factorization& f) {
    ordered_json j;
    j["n"] = f.n;
    j["kind"] = to_string(f.kind);
    if (f.context) {
        j["p"] = f.context->p;
        j["x"] = f.context->x;
    }
    auto matchings = ordered_json::array();
    for (const Permutation& m : f.matchings)
        matchings.push_back(m.image());
    j["matchings"] = std::move(matchings);
    return j;
}

inline ordered_json p1f_report_to_json(const P1FReport& report) {
    ordered_json j;
    j["ok"] = report.ok;
    j["pairs_checked"] = report.pairs_checked;
    auto failing = ordered_json::array();
    for (const P1FFailure& f : report.failing_pairs)
        failing.push_back({{"i", f.i}, {"j", f.j}, {"cycle_lengths", f.cycle_lengths}});
    j["failing_pairs"] = std::move(failing);
    return j;
}

/// {"a":, "b":, "case":, "fixed": [a,b], "cycles": [{"len":, "class2":}...], "t"?}
inline ordered_json case_report_to_json(const CaseReport& report, int p) {
    ordered_json j;
    j["a"] = report.a;
    j["b"] = report.b;
    j["case"] = to_string(report.kind);
    const auto [fa, fb] = decode_pair(report.fixed_label, p);
    j["fixed"] = {fa, fb};
    auto cycles = ordered_json::array();
    for (const CaseCycle& cy : report.cycles)
        cycles.push_back({{"len", cy.length}, {"class2", cy.class2_count}});
    j["cycles"] = std::move(cycles);
    if (report.t)
        j["t"] = *report.t;
    return j;
}

inline ordered_json case_reports_to_json(const std::vector<CaseReport>& reports, int p) {
    auto j = ordered_json::array();
    for (const CaseReport& report : reports)
        j.push_back(case_report_to_json(report, p));
    return j;
}

inline ordered_json verification_report_to_json(const VerificationReport& report) {
    ordered_json j;
    j["proper"] = report.proper;
    auto violations = ordered_json::array();
    for (const ProperViolation& v : report.proper_violations)
        violations.push_back(
            {{"side", v.top_side ? "top" : "bottom"}, {"vertex", v.vertex}, {"color", v.color}});
    j["proper_violations"] = std::move(violations);
    j["acyclic"] = report.acyclic;
    j["pairs_checked"] = report.pairs_checked;
    if (report.bichromatic_witness) {
        const auto& w = *report.bichromatic_witness;
        auto cycle = ordered_json::array();
        for (const Edge& e : w.cycle)
            cycle.push_back({e.top, e.bottom});
        j["bichromatic_witness"] = {{"colors", {w.color_a, w.color_b}}, {"cycle", std::move(cycle)}};
    }
    return j;
}

} // namespace kbip
