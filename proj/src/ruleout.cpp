#include "cyclescope/ruleout.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "cyclescope/curve.hpp"
#include "cyclescope/numth.hpp"
#include "cyclescope/parallel.hpp"

namespace cyclescope {

namespace {

void require_pair(int k1, int k2) {
    if (!ruleout_supported(k1, k2))
        throw std::invalid_argument("unsupported embedding-degree pair (" + std::to_string(k1) + "," +
                                    std::to_string(k2) + "); supported: (5,10), (10,5), (8,8), (12,12)");
}

std::vector<std::int64_t> published_cofactors(int k1, int k2) {
    if (k1 == 5 && k2 == 10) return {11};
    if (k1 == 10 && k2 == 5) return {13};
    if (k1 == 12 && k2 == 12) return {13};
    return {};
}

// Fills in every filter of a split with q1 = q2 + c.
RuleoutCandidate assess(int k1, int k2, std::int64_t c, i128 phi, i128 q1, i128 q2) {
    RuleoutCandidate r;
    r.k1 = k1;
    r.k2 = k2;
    r.c = c;
    r.q1 = q1;
    r.q2 = q2;
    r.d = phi / (q1 * q2);
    const i128 t1 = q1 + 1 - q2;  // c + 1
    const i128 t2 = q2 + 1 - q1;  // 1 - c
    r.hasse_ok = hasse_ok(q1, t1) && hasse_ok(q2, t2);
    r.divisibility_ok = cyclotomic_mod(k1, q1, q2) == 0 && cyclotomic_mod(k2, q2, q1) == 0;
    r.degree_ok = multiplicative_order(q1, q2) == k1 && multiplicative_order(q2, q1) == k2;
    r.ordinary_ok = is_ordinary_trace(q1, t1) && is_ordinary_trace(q2, t2);
    const i128 ci = c;
    r.discriminant_square = is_perfect_square(ci * ci * r.d * r.d + 4 * r.d * phi);
    return r;
}

}  // namespace

bool ruleout_supported(int k1, int k2) {
    return std::find(std::begin(kRuleoutPairs), std::end(kRuleoutPairs), EmbeddingPair{k1, k2}) !=
           std::end(kRuleoutPairs);
}

std::vector<RuleoutCandidate> small_c_candidates(int k1, int k2, std::int64_t c_max, unsigned workers) {
    require_pair(k1, k2);
    if (c_max < 1 || c_max > 500) throw std::invalid_argument("c_max must lie in [1, 500]");
    return parallel_collect<RuleoutCandidate>(
        1, c_max, workers, [k1, k2](std::int64_t lo, std::int64_t hi, std::vector<RuleoutCandidate>& out) {
            for (std::int64_t c = lo; c <= hi; ++c) {
                const i128 phi = cyclotomic_eval(k1, c);
                for (const auto& pp : factorize(phi).factors) {
                    const i128 q2 = pp.prime;
                    const i128 q1 = q2 + c;
                    if (!is_prime(q1) || (phi / q2) % q1 != 0) continue;
                    out.push_back(assess(k1, k2, c, phi, q1, q2));
                }
            }
        });
}

std::vector<RuleoutCandidate> enumerate_small_c(int k1, int k2, std::int64_t c_max, unsigned workers) {
    auto all = small_c_candidates(k1, k2, c_max, workers);
    std::erase_if(all, [](const RuleoutCandidate& r) { return !r.survives(); });
    return all;
}

Rational d_bound_rhs(int k1, std::int64_t c) {
    if (c <= 1) throw std::invalid_argument("d_bound_rhs needs c >= 2");
    const i128 cm1 = c - 1;
    Rational r{checked_mul(16, cyclotomic_eval(k1, c)), checked_mul(checked_mul(cm1, cm1), checked_mul(cm1, cm1))};
    const i128 g = gcd128(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

std::vector<std::int64_t> quartic_residue_sieve(int k1, std::int64_t d, std::int64_t modulus) {
    if (modulus < 2 || modulus > 1'000'000) throw std::invalid_argument("modulus must lie in [2, 10^6]");
    if (d < 1) throw std::invalid_argument("d must be positive");
    if (!cyclotomic_supported(k1)) throw std::invalid_argument("unsupported cyclotomic index");
    std::vector<char> square(static_cast<std::size_t>(modulus), 0);
    for (std::int64_t y = 0; y < modulus; ++y) square[static_cast<std::size_t>(y * y % modulus)] = 1;
    const std::int64_t dm = d % modulus;
    std::vector<std::int64_t> out;
    for (std::int64_t r = 0; r < modulus; ++r) {
        const auto phi = static_cast<std::int64_t>(cyclotomic_mod(k1, r, modulus));
        const std::int64_t cd = r * dm % modulus;
        const std::int64_t v = (cd * cd % modulus + 4 * dm % modulus * phi) % modulus;
        if (square[static_cast<std::size_t>(v)]) out.push_back(r);
    }
    return out;
}

IntegralPointSearch bounded_integral_points(int k1, std::int64_t d, std::int64_t c_bound,
                                            const std::vector<std::int64_t>& moduli, unsigned workers) {
    if (c_bound < 0 || c_bound > 10'000'000) throw std::invalid_argument("c_bound must lie in [0, 10^7]");
    if (d < 1) throw std::invalid_argument("d must be positive");
    IntegralPointSearch search{k1, d, c_bound, moduli, 0, {}};

    std::vector<std::vector<char>> allowed;
    for (std::int64_t m : moduli) {
        std::vector<char> mask(static_cast<std::size_t>(m), 0);
        for (std::int64_t r : quartic_residue_sieve(k1, d, m)) mask[static_cast<std::size_t>(r)] = 1;
        allowed.push_back(std::move(mask));
    }

    struct Chunk {
        std::int64_t survivors = 0;
        std::vector<IntegralPoint> points;
    };
    const auto chunks = parallel_collect<Chunk>(
        0, c_bound, workers, [&](std::int64_t lo, std::int64_t hi, std::vector<Chunk>& out) {
            Chunk chunk;
            const i128 di = d;
            for (std::int64_t c = lo; c <= hi; ++c) {
                bool pass = true;
                for (std::size_t i = 0; i < moduli.size() && pass; ++i)
                    pass = allowed[i][static_cast<std::size_t>(c % moduli[i])] != 0;
                if (!pass) continue;
                ++chunk.survivors;
                const i128 cd = checked_mul(c, di);
                const i128 v = checked_add(checked_mul(cd, cd), checked_mul(4 * di, cyclotomic_eval(k1, c)));
                if (auto y = exact_sqrt(static_cast<u128>(v))) chunk.points.push_back({c, static_cast<i128>(*y)});
            }
            out.push_back(std::move(chunk));
        });
    for (const auto& ch : chunks) {
        search.sieve_survivors += ch.survivors;
        search.points.insert(search.points.end(), ch.points.begin(), ch.points.end());
    }
    return search;
}

std::string verdict_name(Verdict v) {
    return v == Verdict::RuledOutAtDeskScale ? "ruled_out_at_desk_scale" : "counterexample_found";
}

RuleoutReport run_ruleout(int k1, int k2, const RuleoutConfig& config) {
    require_pair(k1, k2);
    if (config.d_max < 1) throw std::invalid_argument("d_max must be positive");
    for (std::int64_t m : config.sieve_moduli)
        if (m < 2 || m > 1'000'000) throw std::invalid_argument("sieve moduli must lie in [2, 10^6]");

    RuleoutReport report;
    report.pair = {k1, k2};
    report.small_c_exhausted_to = config.c_max;
    const auto candidates = small_c_candidates(k1, k2, config.c_max, config.workers);
    report.small_c_candidates = static_cast<std::int64_t>(candidates.size());
    for (const auto& r : candidates)
        if (r.survives()) report.small_c_hits.push_back(r);

    report.admissible_d = admissible_cofactors(k1, config.d_max);
    report.published_d = published_cofactors(k1, k2);
    report.published_reproduced = report.admissible_d == report.published_d;

    std::vector<std::pair<std::int64_t, bool>> cases{{1, false}};
    for (std::int64_t d : report.admissible_d) cases.emplace_back(d, true);

    bool found = !report.small_c_hits.empty();
    for (const auto& [d, admissible] : cases) {
        DCase dc;
        dc.d = d;
        dc.admissible = admissible;
        for (std::int64_t m : config.sieve_moduli) {
            const auto residues = quartic_residue_sieve(k1, d, m);
            dc.sieve_moduli_used.push_back({m, static_cast<std::int64_t>(residues.size())});
            dc.residues_surviving = static_cast<std::int64_t>(residues.size());
            if (residues.empty()) {
                dc.sieve_empty = true;
                break;
            }
        }
        if (!dc.sieve_empty) {
            const auto search =
                bounded_integral_points(k1, d, config.c_bound, config.sieve_moduli, config.workers);
            dc.bounded_search_limit = config.c_bound;
            dc.sieve_survivors = search.sieve_survivors;
            dc.points_found = search.points;
            for (const auto& p : search.points)
                if (p.c >= kLargeCThreshold) dc.points_at_or_above_threshold.push_back(p);
        }
        found = found || !dc.points_at_or_above_threshold.empty();
        report.d_cases.push_back(std::move(dc));
    }
    report.verdict = found ? Verdict::CounterexampleFound : Verdict::RuledOutAtDeskScale;
    return report;
}

std::string render_ruleout_text(const RuleoutReport& r) {
    auto join = [](const std::vector<std::int64_t>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
        return s + "}";
    };
    std::ostringstream os;
    os << "pair (" << r.pair.k1 << "," << r.pair.k2 << ")\n";
    os << "small c: exhausted to " << r.small_c_exhausted_to << ", " << r.small_c_candidates << " splits, "
       << r.small_c_hits.size() << " surviving\n";
    os << "admissible d: " << join(r.admissible_d) << "  published: " << join(r.published_d)
       << (r.published_reproduced ? "  (reproduced)" : "  (differs)") << "\n";
    os << std::left << std::setw(6) << "d" << std::setw(12) << "admissible" << std::setw(28) << "sieve (modulus:residues)"
       << std::setw(14) << "search to c" << std::setw(12) << "survivors" << std::setw(8) << "points"
       << "points c>=" << kLargeCThreshold << "\n";
    for (const auto& dc : r.d_cases) {
        std::string sieve;
        for (const auto& s : dc.sieve_moduli_used)
            sieve += (sieve.empty() ? "" : " ") + std::to_string(s.modulus) + ":" + std::to_string(s.residues_surviving);
        os << std::setw(6) << dc.d << std::setw(12) << (dc.admissible ? "yes" : "extra") << std::setw(28) << sieve
           << std::setw(14) << (dc.bounded_search_limit ? std::to_string(*dc.bounded_search_limit) : "-")
           << std::setw(12) << dc.sieve_survivors << std::setw(8) << dc.points_found.size()
           << dc.points_at_or_above_threshold.size() << "\n";
    }
    os << "verdict: " << verdict_name(r.verdict) << "\n";
    return os.str();
}

}  // namespace cyclescope
