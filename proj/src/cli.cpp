#include "cyclescope/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cyclescope/cycles.hpp"
#include "cyclescope/families.hpp"
#include "cyclescope/json_io.hpp"
#include "cyclescope/numth.hpp"
#include "cyclescope/ruleout.hpp"

namespace cyclescope {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format = "json";
    std::string output;
    unsigned workers = 0;
};

// What a subcommand hands back: the JSON document, optional flat forms and
// the exit code its verdict maps to.
struct Outcome {
    Json doc;
    int code = kExitOk;
    std::vector<Json> csv_cycles;  // rows for --format csv
    bool has_csv = false;
    std::string text;
};

unsigned resolve_workers(unsigned requested) {
    if (const char* env = std::getenv("CYCLESCOPE_WORKERS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024) throw UsageError("CYCLESCOPE_WORKERS must be an integer in [1, 1024]");
        return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string consistency(int code) { return code == kExitOk ? "consistent" : "anomaly"; }

std::string cycles_text(const std::string& title, const std::vector<Json>& cycles, const std::string& verdict) {
    std::ostringstream os;
    os << title << ": " << cycles.size() << " cycle(s)\n";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        os << "[" << i << "]";
        for (const auto& e : cycles[i]["entries"]) {
            os << " (" << scalar_text(e["q"]) << ", " << scalar_text(e["n"]) << ", " << scalar_text(e["t"]);
            if (e.contains("h")) os << ", h=" << scalar_text(e["h"]);
            os << ")";
        }
        if (cycles[i].contains("x")) os << "  x=" << scalar_text(cycles[i]["x"]);
        os << "\n";
        if (cycles[i].contains("curves"))
            for (const auto& c : cycles[i]["curves"])
                os << "    " << c["equation"].get<std::string>() << "  order " << c["order"].dump() << "\n";
    }
    os << "verdict: " << verdict << "\n";
    return os.str();
}

Outcome scan_mnt(int kind, std::int64_t x_min, std::int64_t x_max, bool realize, unsigned workers) {
    if (x_min > x_max) throw UsageError("--x-min must not exceed --x-max");
    Outcome o;
    Json cycles = Json::array();
    bool anomaly = false;
    for (const auto& sc : scan_mnt_cycles(x_min, x_max, kind, workers)) {
        const bool small = std::all_of(sc.cycle.entries().begin(), sc.cycle.entries().end(),
                                       [](const CurveParams& p) { return p.q <= kMaxSearchField; });
        const auto report = verify_cycle(sc.cycle.entries(), realize && small);
        anomaly = anomaly || !report.valid || !report.trace_sum_ok;
        Json j{{"x", int_to_json(sc.x)}};
        j.update(cycle_report_to_json(report, realize));
        cycles.push_back(j);
        o.csv_cycles.push_back(j);
    }
    o.code = anomaly ? kExitAnomaly : kExitOk;
    o.doc = Json{{"command", "scan-mnt"}, {"kind", kind}, {"x_min", x_min}, {"x_max", x_max},
                 {"realize", realize}, {"count", cycles.size()}, {"cycles", std::move(cycles)},
                 {"verdict", consistency(o.code)}};
    o.has_csv = true;
    o.text = cycles_text("scan-mnt kind " + std::to_string(kind), o.csv_cycles, consistency(o.code));
    return o;
}

Outcome verify(const std::string& path, bool realize) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
    Outcome o;
    Json report;
    bool valid = false;
    try {
        if (is_cofactor_document(doc)) {
            const auto r = verify_cofactor_cycle(cofactor_entries_from_json(doc));
            valid = r.valid;
            report = cofactor_report_to_json(r);
        } else {
            const auto r = verify_cycle(cycle_entries_from_json(doc), realize);
            valid = r.valid;
            report = cycle_report_to_json(r, realize);
        }
    } catch (const SchemaError& e) {
        throw UsageError(e.what());
    }
    o.code = valid ? kExitOk : kExitAnomaly;
    o.csv_cycles.push_back(report);
    o.has_csv = true;
    o.doc = Json{{"command", "verify"}, {"input", path}, {"report", report}, {"verdict", valid ? "valid" : "invalid"}};
    o.text = cycles_text("verify", o.csv_cycles, valid ? "valid" : "invalid");
    if (report.contains("note")) o.text += "note: " + report["note"].get<std::string>() + "\n";
    return o;
}

std::pair<int, int> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--pair expects k1,k2");
    try {
        std::size_t used1 = 0, used2 = 0;
        const int k1 = std::stoi(s.substr(0, comma), &used1);
        const int k2 = std::stoi(s.substr(comma + 1), &used2);
        if (used1 != comma || used2 != s.size() - comma - 1) throw UsageError("--pair expects k1,k2");
        return {k1, k2};
    } catch (const std::logic_error&) {
        throw UsageError("--pair expects two integers k1,k2");
    }
}

Outcome ruleout(const std::string& pair, RuleoutConfig config) {
    const auto [k1, k2] = parse_pair(pair);
    if (!ruleout_supported(k1, k2))
        throw UsageError("unsupported pair (" + std::to_string(k1) + "," + std::to_string(k2) +
                         "); supported: 5,10 10,5 8,8 12,12 (larger cyclotomic degrees need other methods)");
    if (config.c_max < 1 || config.c_max > 500) throw UsageError("--c-max must lie in [1, 500]");
    if (config.c_bound < 0 || config.c_bound > 10'000'000) throw UsageError("--c-bound must lie in [0, 10^7]");
    if (config.d_max < 1) throw UsageError("--d-max must be positive");
    for (auto m : config.sieve_moduli)
        if (m < 2 || m > 1'000'000) throw UsageError("--sieve-moduli entries must lie in [2, 10^6]");
    const auto report = run_ruleout(k1, k2, config);
    Outcome o;
    o.code = report.verdict == Verdict::RuledOutAtDeskScale ? kExitOk : kExitAnomaly;
    o.doc = ruleout_report_to_json(report);
    o.doc["command"] = "ruleout";
    o.text = render_ruleout_text(report);
    return o;
}

Outcome cofactor_scan(std::int64_t q_max, int m, std::int64_t min_q, bool all) {
    if (q_max < 2 || q_max > 2000) throw UsageError("--q-max must lie in [2, 2000]");
    if (m < 2 || m > 4) throw UsageError("--m must lie in [2, 4]");
    Outcome o;
    const i128 bound = 12 * static_cast<i128>(m) * m;
    Json cycles = Json::array();
    std::int64_t total = 0;
    bool anomaly = false;
    for (const auto& c : search_cofactor_cycles(q_max, m, !all)) {
        ++total;
        const auto report = verify_cofactor_cycle(c.entries());
        if (report.min_q < min_q) continue;
        anomaly = anomaly || report.bound_anomaly || !report.valid;
        Json j = cofactor_cycle_to_json(c);
        j["min_q"] = int_to_json(report.min_q);
        j["valid"] = report.valid;
        cycles.push_back(j);
        o.csv_cycles.push_back(j);
    }
    o.code = anomaly ? kExitAnomaly : kExitOk;
    o.doc = Json{{"command", "cofactor-scan"}, {"q_max", q_max}, {"m", m}, {"min_q", min_q},
                 {"require_nontrivial", !all}, {"bound", int_to_json(bound)}, {"found_total", total},
                 {"count", cycles.size()}, {"cycles", std::move(cycles)}, {"verdict", consistency(o.code)}};
    o.has_csv = true;
    o.text = cycles_text("cofactor-scan m=" + std::to_string(m), o.csv_cycles, consistency(o.code));
    return o;
}

Outcome same_d_scan(std::int64_t q_max, int m_max) {
    if (q_max < 2 || q_max > 10'000) throw UsageError("--q-max must lie in [2, 10^4]");
    if (m_max < 2 || m_max > 8) throw UsageError("--m-max must lie in [2, 8]");
    Outcome o;
    Json cycles = Json::array();
    bool anomaly = false;
    for (const auto& c : search_same_discriminant_cycles(q_max, m_max)) {
        const auto check = same_discriminant_check(c);
        anomaly = anomaly || check.anomaly;
        Json j = cycle_to_json(c);
        j["same_discriminant"] = same_discriminant_to_json(check);
        cycles.push_back(j);
        o.csv_cycles.push_back(j);
    }
    o.code = anomaly ? kExitAnomaly : kExitOk;
    o.doc = Json{{"command", "same-d-scan"}, {"q_max", q_max}, {"m_max", m_max}, {"count", cycles.size()},
                 {"cycles", std::move(cycles)}, {"verdict", consistency(o.code)}};
    o.has_csv = true;
    o.text = cycles_text("same-d-scan", o.csv_cycles, consistency(o.code));
    return o;
}

Outcome combo_scan(int m_max, std::int64_t x_bound, unsigned workers) {
    if (m_max < 2 || m_max > 4) throw UsageError("--m-max must lie in [2, 4]");
    if (x_bound < 0 || x_bound > 100'000) throw UsageError("--x-bound must lie in [0, 10^5]");
    Outcome o;
    Json cycles = Json::array();
    std::int64_t non_mnt = 0;
    for (const auto& c : search_combo_cycles(m_max, x_bound, workers)) {
        if (!c.is_mnt) ++non_mnt;
        Json j = combo_cycle_to_json(c);
        cycles.push_back(j);
        o.csv_cycles.push_back(j);
    }
    o.code = non_mnt ? kExitAnomaly : kExitOk;
    o.doc = Json{{"command", "combo-scan"}, {"m_max", m_max},       {"x_bound", x_bound},
                 {"count", cycles.size()},  {"non_mnt", non_mnt},   {"cycles", std::move(cycles)},
                 {"verdict", consistency(o.code)}};
    o.has_csv = true;
    o.text = cycles_text("combo-scan", o.csv_cycles, consistency(o.code));
    return o;
}

Outcome dual_primes(std::int64_t q, std::int64_t t) {
    const auto cycle = two_cycle_from_trace(q, t);
    if (!cycle) throw UsageError("(q, t) does not give a 2-cycle of primes satisfying Hasse");
    const DualPrimePair pair = [&] {
        try {
            return to_dual_primes(*cycle);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const Cycle back = from_dual_primes(pair);
    const bool round_trip = back == *cycle;
    const bool norms = lambda_one(pair).norm() == pair.p && lambda_two(pair).norm() == pair.q;
    Outcome o;
    o.code = round_trip && norms ? kExitOk : kExitAnomaly;
    o.doc = Json{{"command", "dual-primes"}, {"cycle", cycle_to_json(*cycle)}, {"dual", dual_primes_to_json(pair)},
                 {"round_trip", round_trip}, {"norms_match", norms}, {"verdict", consistency(o.code)}};
    std::ostringstream os;
    os << "cycle " << cycle->to_string() << "\n"
       << "pi = " << pair.pi.to_string() << ", epsilon = " << pair.epsilon << "\n"
       << "lambda1 = " << lambda_one(pair).to_string() << ", norm " << to_string(lambda_one(pair).norm()) << "\n"
       << "lambda2 = " << lambda_two(pair).to_string() << ", norm " << to_string(lambda_two(pair).norm()) << "\n"
       << "round trip: " << (round_trip ? "identity" : "MISMATCH") << "\n";
    o.text = os.str();
    return o;
}

Outcome structure(std::int64_t x_bound) {
    if (x_bound < 1 || x_bound > 100'000) throw UsageError("--x-bound must lie in [1, 10^5]");
    const auto r = check_mnt_structure_lemmas(x_bound);
    Outcome o;
    o.code = r.passed() ? kExitOk : kExitAnomaly;
    o.doc = structure_report_to_json(r);
    o.doc["command"] = "structure";
    o.doc["verdict"] = consistency(o.code);
    std::ostringstream os;
    for (const auto& c : r.checks)
        os << (c.passed ? "ok    " : "FAIL  ") << c.name << ": " << c.relation << "  solutions " << c.solutions.size()
           << ", nondegenerate " << c.nondegenerate << ", violations " << c.violations << ", symmetric "
           << c.symmetric << "\n";
    os << "verdict: " << consistency(o.code) << "\n";
    o.text = os.str();
    return o;
}

Outcome freeman_bn(std::int64_t sweep) {
    if (sweep < 1 || sweep > 10'000'000) throw UsageError("--sweep must lie in [1, 10^7]");
    const auto r = freeman_bn_no_cycle_check(sweep);
    Outcome o;
    o.code = r.passed ? kExitOk : kExitAnomaly;
    o.doc = freeman_bn_to_json(r);
    o.doc["command"] = "freeman-bn";
    o.doc["verdict"] = consistency(o.code);
    o.text = o.doc.dump(2) + "\n";
    return o;
}

std::string render(const Outcome& o, const std::string& format) {
    if (format == "json") return o.doc.dump(2) + "\n";
    if (format == "text") return o.text.empty() ? o.doc.dump(2) + "\n" : o.text;
    if (!o.has_csv) throw UsageError("--format csv is only available for commands that list cycles");
    return cycles_to_csv(o.csv_cycles);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Search and verify cycles of pairing-friendly elliptic curves", "cyclescope"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", g.output, "Write the report to this file instead of stdout");
    app.add_option("--workers", g.workers, "Worker threads (CYCLESCOPE_WORKERS takes precedence)")
        ->check(CLI::Range(1u, 1024u));

    int kind = 2;
    std::int64_t x_min = 0, x_max = 0;
    bool realize = false;
    auto* scan = app.add_subcommand("scan-mnt", "Scan the MNT parametrization for 2- or 4-cycles");
    scan->add_option("--kind", kind, "Cycle length")->check(CLI::IsMember({2, 4}));
    scan->add_option("--x-min", x_min)->required();
    scan->add_option("--x-max", x_max)->required();
    scan->add_flag("--realize", realize, "Attach explicit curves and their points (q <= 10^4)");

    std::string input;
    bool verify_realize = false;
    auto* ver = app.add_subcommand("verify", "Verify a cycle or cofactor cycle given as JSON");
    ver->add_option("input", input, "JSON file")->required();
    ver->add_flag("--realize", verify_realize, "Also find explicit curves (q <= 10^4)");

    std::string pair;
    RuleoutConfig rc;
    auto* ro = app.add_subcommand("ruleout", "Rule out 2-cycles for an embedding-degree pair");
    ro->add_option("--pair", pair, "k1,k2")->required();
    ro->add_option("--c-max", rc.c_max, "Direct enumeration bound on c = q1 - q2");
    ro->add_option("--d-max", rc.d_max, "Bound on the cofactor d");
    ro->add_option("--sieve-moduli", rc.sieve_moduli, "Comma-separated moduli")->delimiter(',');
    ro->add_option("--c-bound", rc.c_bound, "Bounded integral-point search limit");

    std::int64_t q_max = 1000, min_q = 0;
    int m = 2;
    bool all = false;
    auto* cof = app.add_subcommand("cofactor-scan", "Search cycles with cofactors n_i = h_i q_{i+1}");
    cof->add_option("--q-max", q_max);
    cof->add_option("--m", m);
    cof->add_option("--min-q", min_q, "Only report cycles whose smallest q is at least this");
    cof->add_flag("--all", all, "Include cycles whose cofactors are all 1");

    std::int64_t sd_q_max = 200;
    int sd_m_max = 8;
    auto* sd = app.add_subcommand("same-d-scan", "Search cycles whose entries share a CM discriminant");
    sd->add_option("--q-max", sd_q_max);
    sd->add_option("--m-max", sd_m_max);

    int combo_m = 4;
    std::int64_t x_bound = 1000;
    auto* combo = app.add_subcommand("combo-scan", "Cycles assembled from MNT, Freeman and BN family points");
    combo->add_option("--m-max", combo_m);
    combo->add_option("--x-bound", x_bound);

    std::int64_t dq = 0, dt = 0;
    auto* dual = app.add_subcommand("dual-primes", "Dual elliptic prime view of the 2-cycle through (q, t)");
    dual->add_option("--q", dq)->required();
    dual->add_option("--t", dt)->required();

    std::int64_t st_bound = 1000;
    auto* st = app.add_subcommand("structure", "Solve the adjacency equations between MNT families");
    st->add_option("--x-bound", st_bound);

    std::int64_t sweep = 1000;
    auto* fb = app.add_subcommand("freeman-bn", "Trace checks excluding Freeman and BN curves from cycles");
    fb->add_option("--sweep", sweep);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const unsigned workers = resolve_workers(g.workers);
        rc.workers = workers;
        Outcome o;
        if (*scan)
            o = scan_mnt(kind, x_min, x_max, realize, workers);
        else if (*ver)
            o = verify(input, verify_realize);
        else if (*ro)
            o = ruleout(pair, rc);
        else if (*cof)
            o = cofactor_scan(q_max, m, min_q, all);
        else if (*sd)
            o = same_d_scan(sd_q_max, sd_m_max);
        else if (*combo)
            o = combo_scan(combo_m, x_bound, workers);
        else if (*dual)
            o = dual_primes(dq, dt);
        else if (*st)
            o = structure(st_bound);
        else
            o = freeman_bn(sweep);

        const std::string text = render(o, g.format);
        if (g.output.empty()) {
            out << text;
        } else {
            std::ofstream f(g.output, std::ios::binary);
            if (!f || !(f << text) || !f.flush()) throw IoError("cannot write " + g.output);
        }
        return o.code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace cyclescope
