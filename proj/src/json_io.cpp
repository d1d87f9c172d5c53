#include "cyclescope/json_io.hpp"

#include <sstream>

namespace cyclescope {

namespace {

Json opt_int(const std::optional<i128>& v) { return v ? int_to_json(*v) : Json(nullptr); }

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

const Json& entries_of(const Json& doc) {
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw SchemaError("expected an object with an \"entries\" array");
    return doc["entries"];
}

// q and n are required; t defaults to q + 1 - n.
CurveParams params_from_json(const Json& e) {
    if (!e.is_object()) throw SchemaError("cycle entries must be objects");
    if (!e.contains("q") || !e.contains("n")) throw SchemaError("cycle entries need \"q\" and \"n\"");
    CurveParams p;
    p.q = int_from_json(e["q"], "q");
    p.n = int_from_json(e["n"], "n");
    p.t = e.contains("t") && !e["t"].is_null() ? int_from_json(e["t"], "t") : p.q + 1 - p.n;
    if (e.contains("k_nominal") && !e["k_nominal"].is_null()) {
        const i128 k = int_from_json(e["k_nominal"], "k_nominal");
        if (k < 1 || k > 1'000'000) throw SchemaError("k_nominal out of range");
        p.k_nominal = static_cast<int>(k);
    }
    if (e.contains("D") && !e["D"].is_null()) p.D = int_from_json(e["D"], "D");
    return p;
}

Json candidate_to_json(const RuleoutCandidate& r) {
    return Json{{"k1", r.k1},
                {"k2", r.k2},
                {"c", r.c},
                {"d", int_to_json(r.d)},
                {"q1", int_to_json(r.q1)},
                {"q2", int_to_json(r.q2)},
                {"hasse_ok", r.hasse_ok},
                {"divisibility_ok", r.divisibility_ok},
                {"degree_ok", r.degree_ok},
                {"ordinary_ok", r.ordinary_ok},
                {"discriminant_square", r.discriminant_square}};
}

Json points_to_json(const std::vector<IntegralPoint>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) out.push_back(Json{{"c", p.c}, {"y", int_to_json(p.y)}});
    return out;
}

Json match_to_json(const FamilyMatch& m) {
    return Json{{"family", std::string(family_name(m.family))}, {"x", int_to_json(m.x)}};
}

}  // namespace

std::string scalar_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

Json int_to_json(i128 v) {
    if (fits_i64(v)) return Json(static_cast<std::int64_t>(v));
    return Json(to_string(v));
}

i128 int_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? static_cast<i128>(j.get<std::uint64_t>())
                                                             : static_cast<i128>(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_i128(j.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError(std::string("field \"") + what + "\" is not an integer");
        }
    }
    throw SchemaError(std::string("field \"") + what + "\" must be an integer or a decimal string");
}

Json curve_to_json(const WeierstrassCurve& curve, bool with_points) {
    Json j{{"q", curve.q()},
           {"a2", curve.a2()},
           {"a4", curve.a4()},
           {"a6", curve.a6()},
           {"equation", curve.to_string()},
           {"order", curve_order(curve)}};
    if (with_points && curve.q() <= kMaxListingField) {
        Json pts = Json::array();
        for (const auto& p : list_points(curve)) pts.push_back(Json::array({p.x, p.y}));
        j["affine_points"] = static_cast<std::int64_t>(pts.size());
        j["points"] = std::move(pts);
    }
    return j;
}

Json cycle_report_to_json(const CycleReport& report, bool with_points) {
    Json entries = Json::array();
    Json checks = Json::array();
    Json curves = Json::array();
    for (const auto& e : report.entries) {
        entries.push_back(Json{{"q", int_to_json(e.params.q)},
                               {"n", int_to_json(e.params.n)},
                               {"t", int_to_json(e.params.t)},
                               {"k_nominal", opt_int(e.params.k_nominal)},
                               {"k_actual", opt_int(e.k_actual)},
                               {"D", opt_int(e.D)}});
        checks.push_back(Json{{"q_prime", e.q_prime},
                              {"consistent", e.consistent},
                              {"closure", e.closure},
                              {"hasse", e.hasse},
                              {"ordinary", e.ordinary},
                              {"D_matches", e.D_matches},
                              {"k_matches", e.k_matches}});
        if (e.curve) curves.push_back(curve_to_json(*e.curve, with_points));
    }
    Json j{{"entries", std::move(entries)}, {"valid", report.valid}, {"trace_sum", int_to_json(report.trace_sum)}};
    j["checks"] = Json{{"entries", std::move(checks)}, {"trace_sum_ok", report.trace_sum_ok}, {"distinct", report.distinct}};
    if (report.realize_requested) {
        j["realized"] = report.realized;
        if (!report.realize_note.empty()) j["realize_note"] = report.realize_note;
        j["curves"] = std::move(curves);
    }
    return j;
}

Json cycle_to_json(const Cycle& cycle) {
    Json j = cycle_report_to_json(verify_cycle(cycle.entries()));
    j.erase("checks");
    return j;
}

Json cofactor_report_to_json(const CofactorReport& report) {
    Json entries = Json::array();
    for (const auto& e : report.entries)
        entries.push_back(Json{{"q", int_to_json(e.entry.params.q)},
                               {"n", int_to_json(e.entry.params.n)},
                               {"t", int_to_json(e.entry.params.t)},
                               {"h", int_to_json(e.entry.h)},
                               {"q_prime", e.q_prime},
                               {"closure", e.closure},
                               {"hasse", e.hasse},
                               {"supersingular", e.supersingular}});
    Json j{{"entries", std::move(entries)},
           {"valid", report.valid},
           {"distinct", report.distinct},
           {"nontrivial", report.nontrivial},
           {"min_q", int_to_json(report.min_q)},
           {"bound", int_to_json(report.bound)},
           {"bound_anomaly", report.bound_anomaly}};
    if (report.valid) j["note"] = report.nontrivial ? "nontrivial cofactor" : "all cofactors trivial";
    return j;
}

Json cofactor_cycle_to_json(const CofactorCycle& cycle) {
    Json entries = Json::array();
    for (const auto& e : cycle.entries())
        entries.push_back(Json{{"q", int_to_json(e.params.q)},
                               {"n", int_to_json(e.params.n)},
                               {"t", int_to_json(e.params.t)},
                               {"h", int_to_json(e.h)}});
    return Json{{"entries", std::move(entries)}, {"nontrivial", cycle.nontrivial()}};
}

bool is_cofactor_document(const Json& doc) {
    for (const auto& e : entries_of(doc))
        if (e.is_object() && e.contains("h")) return true;
    return false;
}

std::vector<CurveParams> cycle_entries_from_json(const Json& doc) {
    std::vector<CurveParams> out;
    for (const auto& e : entries_of(doc)) out.push_back(params_from_json(e));
    return out;
}

std::vector<CofactorEntry> cofactor_entries_from_json(const Json& doc) {
    std::vector<CofactorEntry> out;
    for (const auto& e : entries_of(doc)) {
        CofactorEntry ce{params_from_json(e), 1};
        if (e.contains("h")) ce.h = int_from_json(e["h"], "h");
        out.push_back(ce);
    }
    return out;
}

Json ruleout_report_to_json(const RuleoutReport& r) {
    Json hits = Json::array();
    for (const auto& h : r.small_c_hits) hits.push_back(candidate_to_json(h));
    Json cases = Json::array();
    for (const auto& dc : r.d_cases) {
        Json moduli = Json::array();
        for (const auto& s : dc.sieve_moduli_used)
            moduli.push_back(Json{{"modulus", s.modulus}, {"residues_surviving", s.residues_surviving}});
        cases.push_back(Json{{"d", dc.d},
                             {"admissible", dc.admissible},
                             {"sieve_moduli_used", std::move(moduli)},
                             {"residues_surviving", dc.residues_surviving},
                             {"sieve_empty", dc.sieve_empty},
                             {"bounded_search_limit", dc.bounded_search_limit ? Json(*dc.bounded_search_limit) : Json(nullptr)},
                             {"sieve_survivors", dc.sieve_survivors},
                             {"points_found", points_to_json(dc.points_found)},
                             {"points_at_or_above_threshold", points_to_json(dc.points_at_or_above_threshold)}});
    }
    return Json{{"pair", Json::array({r.pair.k1, r.pair.k2})},
                {"small_c_exhausted_to", r.small_c_exhausted_to},
                {"small_c_candidates", r.small_c_candidates},
                {"small_c_hits", std::move(hits)},
                {"admissible_d", r.admissible_d},
                {"published_d", r.published_d},
                {"published_reproduced", r.published_reproduced},
                {"large_c_threshold", kLargeCThreshold},
                {"d_cases", std::move(cases)},
                {"verdict", verdict_name(r.verdict)}};
}

Json same_discriminant_to_json(const SameDiscriminantReport& r) {
    Json d = Json::array();
    for (i128 v : r.D) d.push_back(int_to_json(v));
    return Json{{"D", std::move(d)},      {"all_equal", r.all_equal}, {"m", r.m},
                {"distinct_q", r.distinct_q}, {"unit_condition", r.unit_condition}, {"anomaly", r.anomaly},
                {"note", r.note}};
}

Json structure_report_to_json(const StructureReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json sols = Json::array();
        for (const auto& [a, b] : c.solutions) sols.push_back(Json::array({a, b}));
        checks.push_back(Json{{"name", c.name},
                              {"relation", c.relation},
                              {"solutions", std::move(sols)},
                              {"nondegenerate", c.nondegenerate},
                              {"violations", c.violations},
                              {"symmetric", c.symmetric},
                              {"passed", c.passed}});
    }
    return Json{{"x_bound", r.x_bound}, {"checks", std::move(checks)}, {"passed", r.passed()}};
}

Json freeman_bn_to_json(const FreemanBnReport& r) {
    return Json{{"freeman_trace_discriminant", int_to_json(r.freeman_trace_discriminant)},
                {"sweep", r.sweep},
                {"freeman_min_trace", int_to_json(r.freeman_min_trace)},
                {"freeman_min_trace_at", r.freeman_min_trace_at},
                {"freeman_trace_above_one", r.freeman_trace_above_one},
                {"bn_trace_one_at", r.bn_trace_one_at},
                {"bn_q_at_zero", int_to_json(r.bn_q_at_zero)},
                {"bn_n_at_zero", int_to_json(r.bn_n_at_zero)},
                {"bn_zero_prime", r.bn_zero_prime},
                {"passed", r.passed}};
}

Json combo_cycle_to_json(const ComboCycle& combo) {
    Json j = cycle_to_json(combo.cycle);
    Json labels = Json::array();
    for (const auto& entry : combo.labels) {
        Json l = Json::array();
        for (const auto& m : entry) l.push_back(match_to_json(m));
        labels.push_back(std::move(l));
    }
    j["families"] = std::move(labels);
    j["is_mnt"] = combo.is_mnt;
    return j;
}

Json dual_primes_to_json(const DualPrimePair& pair) {
    const auto l1 = lambda_one(pair);
    const auto l2 = lambda_two(pair);
    return Json{{"pi", pair.pi.to_string()},
                {"epsilon", pair.epsilon},
                {"p", int_to_json(pair.p)},
                {"q", int_to_json(pair.q)},
                {"D", int_to_json(pair.pi.D())},
                {"lambda1", l1.to_string()},
                {"lambda2", l2.to_string()},
                {"norm_lambda1", int_to_json(l1.norm())},
                {"norm_lambda2", int_to_json(l2.norm())}};
}

std::string cycles_to_csv(const std::vector<Json>& cycles) {
    std::ostringstream os;
    os << "cycle_id,index,q,n,t,k_nominal,k_actual,D,h,valid\n";
    for (std::size_t id = 0; id < cycles.size(); ++id) {
        const auto& c = cycles[id];
        const auto& entries = c.at("entries");
        const std::string valid = c.contains("valid") ? c["valid"].dump() : "";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            auto cell = [&e](const char* key) { return e.contains(key) ? scalar_text(e[key]) : std::string(); };
            os << id << ',' << i << ',' << cell("q") << ',' << cell("n") << ',' << cell("t") << ','
               << cell("k_nominal") << ',' << cell("k_actual") << ',' << cell("D") << ',' << cell("h") << ','
               << valid << '\n';
        }
    }
    return os.str();
}

}  // namespace cyclescope
