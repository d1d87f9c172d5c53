#pragma once

// Cycle-level objects and checks: the cycle condition, trace sums, shared
// CM discriminants, cofactor cycles and the dual-elliptic-prime view of
// ordinary 2-cycles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclescope/curve.hpp"
#include "cyclescope/int128.hpp"

namespace cyclescope {

/// An m-cycle at parameter level: n_i = q_{i+1 mod m}, every q_i prime,
/// entries pairwise distinct as (q, n, t). A field size may repeat.
class Cycle {
public:
    /// Throws std::invalid_argument if any invariant fails.
    explicit Cycle(std::vector<CurveParams> entries);

    const std::vector<CurveParams>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    i128 trace_sum() const;

    /// Rotated so the smallest (q, n, t) entry comes first.
    Cycle canonical() const;

    /// Equal up to rotation, comparing (q, n, t) only.
    bool same_cycle(const Cycle& other) const;

    std::string to_string() const;

private:
    std::vector<CurveParams> entries_;
};

/// Lexicographic on the (q, n, t) sequence.
bool operator<(const Cycle& a, const Cycle& b);
bool operator==(const Cycle& a, const Cycle& b);

struct EntryReport {
    CurveParams params;
    bool q_prime = false;
    bool consistent = false;  // n == q + 1 - t
    bool closure = false;     // n_i == q_{i+1}
    bool hasse = false;
    bool ordinary = false;  // n != q + 1 whenever q >= 5
    std::optional<i128> D;  // squarefree part of 4q - t^2
    bool D_matches = true;  // against a supplied D
    std::optional<i128> k_actual;
    bool k_matches = true;  // against a supplied nominal k; informational
    std::optional<WeierstrassCurve> curve;
};

struct CycleReport {
    std::vector<EntryReport> entries;
    i128 trace_sum = 0;
    bool trace_sum_ok = false;
    bool distinct = false;
    bool realize_requested = false;
    bool realized = false;
    std::string realize_note;
    bool valid = false;

    std::vector<i128> discriminants() const;
};

/// Checks primality, closure, Hasse, ordinarity, the trace sum and distinctness.
/// With `realize` and every q in [3, 10^4], also searches a curve per entry and
/// includes the realization in the verdict. Never throws for bad cycles.
CycleReport verify_cycle(const std::vector<CurveParams>& entries, bool realize = false);

/// [(q1, q2, t1), (q2, q1, 2 - t1)] when q2 = q1 + 1 - t1 is a prime distinct
/// from q1 and both traces satisfy Hasse.
std::optional<Cycle> two_cycle_from_trace(i128 q1, i128 t1);

struct SameDiscriminantReport {
    std::vector<i128> D;
    bool all_equal = false;
    std::size_t m = 0;
    bool distinct_q = false;
    bool unit_condition = false;  // -D = 0, 1 (mod 4) and D > 3
    bool anomaly = false;
    std::string note;
};

/// Flags an anomaly when all entries share D, the q_i are distinct and m >= 3
/// without being the (m = 6, D = 3) exception.
SameDiscriminantReport same_discriminant_check(const Cycle& cycle);

/// All ordinary cycles of distinct primes q_i <= q_max, 2 <= m <= m_max, whose
/// entries share one squarefree D. Requires q_max <= 10^4, m_max <= 8.
std::vector<Cycle> search_same_discriminant_cycles(i128 q_max, int m_max);

struct CofactorEntry {
    CurveParams params;
    i128 h = 1;
};

/// n_i = h_i * q_{i+1 mod m}, h_i >= 1, all q_i prime and distinct entries.
class CofactorCycle {
public:
    explicit CofactorCycle(std::vector<CofactorEntry> entries);
    const std::vector<CofactorEntry>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    bool nontrivial() const;
    std::string to_string() const;

private:
    std::vector<CofactorEntry> entries_;
};

bool operator<(const CofactorCycle& a, const CofactorCycle& b);

struct CofactorEntryReport {
    CofactorEntry entry;
    bool q_prime = false;
    bool closure = false;
    bool hasse = false;
    bool supersingular = false;
};

struct CofactorReport {
    std::vector<CofactorEntryReport> entries;
    bool distinct = false;
    bool nontrivial = false;
    i128 min_q = 0;
    i128 max_q = 0;
    i128 bound = 0;  // 12 m^2
    bool valid = false;
    /// valid, nontrivial and every q_i > 12 m^2: must never happen.
    bool bound_anomaly = false;
};

CofactorReport verify_cofactor_cycle(const std::vector<CofactorEntry>& entries);

/// Every simple m-cycle through primes <= q_max where each step q -> q' has an
/// order h q' in the Hasse interval of q (supersingular orders excluded).
/// Output starts each cycle at its smallest prime and is sorted.
/// Requires q_max <= 2000 and 2 <= m <= 4.
std::vector<CofactorCycle> search_cofactor_cycles(i128 q_max, int m, bool require_nontrivial);

/// (a + b sqrt(-D)) / 2 when halved, a + b sqrt(-D) otherwise.
class QuadraticInteger {
public:
    /// Throws std::invalid_argument unless D is positive squarefree and the
    /// norm is an integer.
    QuadraticInteger(i128 a, i128 b, i128 D, bool halved);

    i128 a() const { return a_; }
    i128 b() const { return b_; }
    i128 D() const { return D_; }
    bool halved() const { return halved_; }

    i128 norm() const;
    /// x + conj(x)
    i128 trace() const;
    QuadraticInteger operator+(i128 k) const;
    QuadraticInteger operator-() const;
    QuadraticInteger conjugate() const;
    bool operator==(const QuadraticInteger&) const = default;

    std::string to_string() const;

private:
    i128 a_, b_, D_;
    bool halved_;
};

struct DualPrimePair {
    QuadraticInteger pi;
    int epsilon = 1;
    i128 p = 0;
    i128 q = 0;
};

/// lambda_1 = -epsilon * pi, the Frobenius of the first curve.
QuadraticInteger lambda_one(const DualPrimePair& pair);
/// lambda_2 = 1 - lambda_1.
QuadraticInteger lambda_two(const DualPrimePair& pair);

/// Builds pi = -lambda_1 with lambda_1 = (t1 + y sqrt(-D)) / 2 and epsilon = +1.
/// Throws std::invalid_argument for cycles that are not ordinary 2-cycles.
DualPrimePair to_dual_primes(const Cycle& cycle);

/// The 2-cycle with t1 = -epsilon (pi + conj(pi)). Throws
/// std::invalid_argument when the norms disagree or are not prime.
Cycle from_dual_primes(const DualPrimePair& pair);

}  // namespace cyclescope
