#pragma once

// Polynomial families of prime-order pairing-friendly curves, the MNT cycle
// parametrizations built from them, and bounded searches over the families.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclescope/cycles.hpp"

namespace cyclescope {

/// MNT4A: n = x^2 + 2x + 2, t = -x. MNT4B: n = x^2 + 1, t = x + 1.
enum class Family { MNT3, MNT4A, MNT4B, MNT6, FREEMAN, BN };

inline constexpr std::array<Family, 6> kAllFamilies{Family::MNT3, Family::MNT4A, Family::MNT4B,
                                                    Family::MNT6, Family::FREEMAN, Family::BN};

int nominal_degree(Family f);
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Coefficients from the constant term upwards.
struct FamilyPolynomials {
    std::array<int, 5> q;
    std::array<int, 5> n;
    std::array<int, 5> t;
};

const FamilyPolynomials& family_polynomials(Family f);

struct FamilyPoint {
    Family family;
    i128 x;
    CurveParams params;
    bool q_prime;
    bool n_prime;

    bool both_prime() const { return q_prime && n_prime; }
};

/// Exact evaluation at x; q and n need not be prime.
FamilyPoint family_params(Family f, i128 x);

struct FamilyMatch {
    Family family;
    i128 x;
    bool operator==(const FamilyMatch&) const = default;
};

/// Every (family, x) reproducing (q, n, t) exactly, sorted by family then x.
std::vector<FamilyMatch> recognize_family(const CurveParams& params);

/// The (6,4) 2-cycle at x when 4x^2 + 1 and 4x^2 + 2x + 1 are both prime.
std::optional<Cycle> mnt_two_cycle_at(i128 x);

/// The (6,4,6,4) 4-cycle at x when 4x^2 + 1 and 4x^2 +- 2x + 1 are all prime.
std::optional<Cycle> mnt_four_cycle_at(i128 x);

struct ScannedCycle {
    i128 x;
    Cycle cycle;
};

/// All nonempty cycles of the given kind (2 or 4) for x in [x_min, x_max],
/// ascending in x.
std::vector<ScannedCycle> scan_mnt_cycles(i128 x_min, i128 x_max, int kind, unsigned workers = 1);

/// Recognises a (6,4) or (6,4,6,4) cycle from the MNT parametrization,
/// up to rotation.
bool is_mnt_cycle(const Cycle& cycle);

struct LemmaCheck {
    std::string name;
    std::string relation;
    /// (x_i, x_{i+1}) pairs; for congruence checks (x, k).
    std::vector<std::pair<std::int64_t, std::int64_t>> solutions;
    /// Solutions whose shared value is prime (forbidden adjacencies).
    std::int64_t nondegenerate = 0;
    /// Solutions breaking the stated relation (characterisations).
    std::int64_t violations = 0;
    /// Solutions x_{i+1} = -1 - 2 x_i, which give the same q_4 as 2 x_i.
    std::int64_t symmetric = 0;
    bool passed = false;
};

struct StructureReport {
    std::int64_t x_bound = 0;
    std::vector<LemmaCheck> checks;
    bool passed() const;
};

/// Exhaustively solves the adjacency equations between MNT families for
/// |x_i|, |x_{i+1}| <= x_bound.
StructureReport check_mnt_structure_lemmas(std::int64_t x_bound);

struct FreemanBnReport {
    i128 freeman_trace_discriminant = 0;  // of t_10(x) - 1
    std::int64_t sweep = 0;
    i128 freeman_min_trace = 0;
    std::int64_t freeman_min_trace_at = 0;
    bool freeman_trace_above_one = false;
    std::vector<std::int64_t> bn_trace_one_at;
    i128 bn_q_at_zero = 0;
    i128 bn_n_at_zero = 0;
    bool bn_zero_prime = true;
    bool passed = false;
};

FreemanBnReport freeman_bn_no_cycle_check(std::int64_t sweep = 1000);

struct ComboCycle {
    Cycle cycle;
    std::vector<std::vector<FamilyMatch>> labels;
    bool is_mnt = false;
};

/// Parameter-level cycles of length <= m_max assembled from family points with
/// |x| <= x_bound and q, n prime. Requires 2 <= m_max <= 4, x_bound <= 10^5.
std::vector<ComboCycle> search_combo_cycles(int m_max, std::int64_t x_bound, unsigned workers = 1);

}  // namespace cyclescope
