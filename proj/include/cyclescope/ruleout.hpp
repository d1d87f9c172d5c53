#pragma once

// Rule-out of 2-cycles with embedding degrees (5,10), (10,5), (8,8) and
// (12,12). With c = q1 - q2 and d = Phi_k1(c) / (q1 q2), a cycle forces
// c^2 d^2 + 4 d Phi_k1(c) to be a square. Small c are enumerated directly;
// for larger c the cofactor d is bounded and each admissible d is attacked
// with congruence sieves and a bounded perfect-square search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclescope/int128.hpp"

namespace cyclescope {

struct EmbeddingPair {
    int k1 = 0;
    int k2 = 0;
    bool operator==(const EmbeddingPair&) const = default;
};

inline constexpr EmbeddingPair kRuleoutPairs[] = {{5, 10}, {10, 5}, {8, 8}, {12, 12}};

bool ruleout_supported(int k1, int k2);

struct RuleoutCandidate {
    int k1 = 0;
    int k2 = 0;
    std::int64_t c = 0;
    i128 d = 0;
    i128 q1 = 0;
    i128 q2 = 0;
    bool hasse_ok = false;         // t1 = c + 1 over q1, t2 = 1 - c over q2
    bool divisibility_ok = false;  // q2 | Phi_k1(q1) and q1 | Phi_k2(q2)
    bool degree_ok = false;        // exact embedding degrees k1 and k2
    bool ordinary_ok = false;
    bool discriminant_square = false;  // c^2 d^2 + 4 d Phi_k1(c)

    bool survives() const { return hasse_ok && divisibility_ok && degree_ok && ordinary_ok; }
};

/// Every split Phi_k1(c) = d q1 q2 with q1 = q2 + c both prime, for 1 <= c <= c_max,
/// with the filters evaluated but not applied. Throws std::invalid_argument
/// for unsupported pairs or c_max outside [1, 500].
std::vector<RuleoutCandidate> small_c_candidates(int k1, int k2, std::int64_t c_max, unsigned workers = 1);

/// The candidates above that pass every cycle condition.
std::vector<RuleoutCandidate> enumerate_small_c(int k1, int k2, std::int64_t c_max, unsigned workers = 1);

struct Rational {
    i128 num = 0;
    i128 den = 1;  // > 0, reduced

    bool less_than(i128 k) const { return num < checked_mul(k, den); }
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// 16 Phi_k1(c) / (c - 1)^4 exactly. Throws std::invalid_argument for c <= 1.
Rational d_bound_rhs(int k1, std::int64_t c);

/// Residues r mod `modulus` for which c^2 d^2 + 4 d Phi_k1(c) is a square mod
/// `modulus` whenever c = r. Requires 2 <= modulus <= 10^6.
std::vector<std::int64_t> quartic_residue_sieve(int k1, std::int64_t d, std::int64_t modulus);

struct IntegralPoint {
    std::int64_t c = 0;
    i128 y = 0;
    bool operator==(const IntegralPoint&) const = default;
};

struct IntegralPointSearch {
    int k1 = 0;
    std::int64_t d = 0;
    std::int64_t c_bound = 0;
    std::vector<std::int64_t> moduli;
    std::int64_t sieve_survivors = 0;  // c values reaching the square test
    std::vector<IntegralPoint> points;
};

/// All (c, y) with 0 <= c <= c_bound, y >= 0 and y^2 = c^2 d^2 + 4 d Phi_k1(c).
/// Residue sieves for `moduli` are used only to skip c that cannot work.
/// Requires c_bound <= 10^7.
IntegralPointSearch bounded_integral_points(int k1, std::int64_t d, std::int64_t c_bound,
                                            const std::vector<std::int64_t>& moduli = {}, unsigned workers = 1);

/// Below this, c is covered by the direct enumeration.
inline constexpr std::int64_t kLargeCThreshold = 83;

struct SieveStep {
    std::int64_t modulus = 0;
    std::int64_t residues_surviving = 0;
};

struct DCase {
    std::int64_t d = 0;
    bool admissible = true;  // false for the extra d = 1 case
    std::vector<SieveStep> sieve_moduli_used;
    std::int64_t residues_surviving = 0;  // after the last modulus used
    bool sieve_empty = false;
    std::optional<std::int64_t> bounded_search_limit;
    std::int64_t sieve_survivors = 0;
    std::vector<IntegralPoint> points_found;
    std::vector<IntegralPoint> points_at_or_above_threshold;
};

enum class Verdict { RuledOutAtDeskScale, CounterexampleFound };

std::string verdict_name(Verdict v);

struct RuleoutConfig {
    std::int64_t c_max = 82;
    std::int64_t d_max = 16;
    std::vector<std::int64_t> sieve_moduli{16, 9, 5, 7, 11, 13};
    std::int64_t c_bound = 1'000'000;
    unsigned workers = 1;
};

struct RuleoutReport {
    EmbeddingPair pair;
    std::int64_t small_c_exhausted_to = 0;
    std::int64_t small_c_candidates = 0;  // splits before filtering
    std::vector<RuleoutCandidate> small_c_hits;
    std::vector<std::int64_t> admissible_d;
    std::vector<std::int64_t> published_d;  // the published admissible-d table
    bool published_reproduced = false;
    std::vector<DCase> d_cases;
    Verdict verdict = Verdict::RuledOutAtDeskScale;
};

/// Throws std::invalid_argument for unsupported pairs or bad bounds.
RuleoutReport run_ruleout(int k1, int k2, const RuleoutConfig& config = {});

/// Fixed-width case table, one row per d case.
std::string render_ruleout_text(const RuleoutReport& report);

}  // namespace cyclescope
