#pragma once

// JSON interchange formats for every value the command line reads or
// writes.  Keys are emitted in sorted order, so output is byte-stable.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "flips.hpp"
#include "laurent.hpp"
#include "oracle.hpp"
#include "point.hpp"
#include "qmatrix.hpp"
#include "set.hpp"

namespace cubist {

using json = nlohmann::ordered_json;

inline json to_json(const Point& p) { return json(p); }

inline Point point_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("point: expected array");
    return j.get<Point>();
}

// -- polynomials -------------------------------------------------------------

inline json to_json(const LaurentPoly& p) {
    json terms = json::object();
    for (auto& [e, c] : p.terms()) terms[std::to_string(e)] = c;
    return json{{"terms", std::move(terms)}};
}

inline LaurentPoly poly_from_json(const json& j) {
    LaurentPoly::term_list terms;
    for (auto& [k, v] : j.at("terms").items())
        terms.emplace_back(std::stoi(k), v.get<coeff_t>());
    return LaurentPoly::from_terms(std::move(terms));
}

inline json to_json(const TruncSeries& s) {
    json terms = json::object();
    for (auto& [e, c] : s.terms()) terms[std::to_string(e)] = c;
    return json{{"cutoff", s.cutoff()}, {"terms", std::move(terms)}};
}

inline TruncSeries series_from_json(const json& j) {
    LaurentPoly::term_list terms;
    for (auto& [k, v] : j.at("terms").items())
        terms.emplace_back(std::stoi(k), v.get<coeff_t>());
    return TruncSeries(LaurentPoly::from_terms(std::move(terms)),
                       j.at("cutoff").get<int>());
}

// -- Cubist sets -------------------------------------------------------------

inline json to_json(const CubistSet& set) {
    json base;
    if (const auto* f = std::get_if<FlatBase>(&set.base())) {
        base = json{{"kind", "flat"}, {"axis", f->axis}, {"level", f->level}};
    } else if (const auto* c = std::get_if<CornerBase>(&set.base())) {
        base = json{{"kind", "corner"}, {"anchor", c->anchor}};
    } else {
        const auto& w = std::get<Weight2Base>(set.base());
        json pyr = json::array();
        for (auto& [u, v] : w.pyramid) pyr.push_back(json::array({u, v}));
        base = json{{"kind", "weight2"}, {"p", w.p}, {"pyramid", std::move(pyr)}};
    }
    json removals = json::array();
    for (const Point& y : set.removals()) removals.push_back(y);
    return json{{"rank", set.rank()}, {"base", std::move(base)},
                {"removals", std::move(removals)}};
}

inline CubistSet set_from_json(const json& j) {
    int rank = j.at("rank").get<int>();
    const json& jb = j.at("base");
    std::string kind = jb.at("kind").get<std::string>();
    BaseIdeal base;
    if (kind == "flat") {
        base = FlatBase{jb.at("axis").get<int>(), jb.at("level").get<int>()};
    } else if (kind == "corner") {
        base = CornerBase{point_from_json(jb.at("anchor"))};
    } else if (kind == "weight2") {
        Weight2Base w;
        w.p = jb.at("p").get<int>();
        for (const json& pr : jb.at("pyramid"))
            w.pyramid.insert({pr.at(0).get<int>(), pr.at(1).get<int>()});
        base = std::move(w);
    } else {
        throw std::invalid_argument("set: unknown base kind '" + kind + "'");
    }
    std::vector<Point> removals;
    for (const json& y : j.at("removals")) removals.push_back(point_from_json(y));
    return CubistSet(rank, std::move(base), std::move(removals));
}

// -- matrices ----------------------------------------------------------------

template <typename EntryT>
inline json to_json(const QMatrix<EntryT>& m) {
    json rows = json::array(), cols = json::array(), entries = json::array();
    for (const Point& x : m.rows) rows.push_back(x);
    for (const Point& x : m.cols) cols.push_back(x);
    for (auto& [rc, v] : m.entries)
        entries.push_back(json{{"r", rc.first}, {"c", rc.second}, {"poly", to_json(v)}});
    return json{{"rows", std::move(rows)}, {"cols", std::move(cols)},
                {"entries", std::move(entries)}};
}

// -- reports -----------------------------------------------------------------

inline json to_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json failures = json::array();
        for (const auto& f : c.failures)
            failures.push_back(json{{"x", f.x}, {"y", f.y}, {"lhs", f.lhs},
                                    {"rhs", f.rhs}});
        checks.push_back(json{{"name", c.name}, {"pass", c.pass()},
                              {"failure_count", c.failure_count},
                              {"failures", std::move(failures)}});
    }
    return json{{"all_pass", rep.all_pass()}, {"checks", std::move(checks)}};
}

inline json to_json(const OracleReport& rep) {
    json mm = json::array();
    for (const auto& m : rep.mismatches)
        mm.push_back(json{{"x", m.x}, {"y", m.y}, {"degree", m.degree},
                          {"expected", m.expected}, {"actual", m.actual}});
    return json{{"pass", rep.pass()}, {"comparisons", rep.comparisons},
                {"mismatch_count", rep.mismatch_count}, {"mismatches", std::move(mm)}};
}

inline json to_json(const FlipCheckReport& rep) {
    json entry_failures = json::array();
    for (const auto& f : rep.entry_failures)
        entry_failures.push_back(json{{"x", f.x}, {"y", f.y},
                                      {"predicted", f.predicted},
                                      {"actual", f.actual}});
    json col_failures = json::array();
    for (const auto& f : rep.column_formula_failures)
        col_failures.push_back(json{{"x", f.x}, {"y", f.y},
                                    {"predicted", f.predicted},
                                    {"actual", f.actual}});
    json zrows = json::array();
    for (const Point& x : rep.nonzero_z_entries) zrows.push_back(x);
    return json{{"pass", rep.pass},
                {"z", rep.z},
                {"reindexed_to", rep.z_down},
                {"entries_compared", rep.entries_compared},
                {"entry_failures", std::move(entry_failures)},
                {"column_formula_failures", std::move(col_failures)},
                {"nonzero_flip_vertex_entries", std::move(zrows)}};
}

inline json to_json(const ShortLabel& label) {
    switch (label.kind) {
    case ShortLabel::Kind::Pair:
        return json{{"kind", "pair"}, {"u", label.u}, {"v", label.v}};
    case ShortLabel::Kind::Single:
        return json{{"kind", "single"}, {"u", label.u}};
    default:
        return json{{"kind", "doubled"}, {"u", label.u}};
    }
}

inline json to_json(const BlockDescriptor& b) {
    json pyr = json::array();
    for (auto& [u, v] : b.pyramid) pyr.push_back(json::array({u, v}));
    json sset = json::array();
    for (auto& [u, v] : sset_pairs(b))
        if (b.in_sset(u, v)) sset.push_back(json::array({u, v}));
    json labels = json::array();
    for (auto& [u, v] : sset_pairs(b)) {
        ShortLabel label = lambda_b(b, u, v);
        labels.push_back(json{{"uv", json::array({u, v})},
                              {"label", to_json(label)},
                              {"partition", label_partition(b, label).parts}});
    }
    json scopes = json::array();
    for (const ScopesPair& sp : scopes_pairs(b))
        scopes.push_back(json{{"s", sp.s}, {"t", sp.t}, {"m", sp.m}});
    return json{{"p", b.p},
                {"bead_count", b.N},
                {"core", b.core.parts},
                {"beads", std::vector<long long>(b.core_abacus.beads.begin(),
                                                 b.core_abacus.beads.end())},
                {"gaps", b.q},
                {"pyramid", std::move(pyr)},
                {"sset", std::move(sset)},
                {"labels", std::move(labels)},
                {"scopes_pairs", std::move(scopes)}};
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace cubist
