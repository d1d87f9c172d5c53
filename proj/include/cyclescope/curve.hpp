#pragma once

// Curves at two levels: CurveParams is the parameter-level (q, n, t) record
// used for all cycle reasoning; WeierstrassCurve is an explicit curve over a
// small prime field that can be counted and enumerated.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclescope/int128.hpp"

namespace cyclescope {

/// Trace outside the Hasse interval |t| <= 2 sqrt(q).
class HasseViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CurveParams {
    i128 q = 0;
    i128 n = 0;
    i128 t = 0;
    std::optional<int> k_nominal;
    std::optional<i128> D;

    /// Builds (q, n, q + 1 - n) without validating anything.
    static CurveParams from_order(i128 q, i128 n, std::optional<int> k = std::nullopt,
                                  std::optional<i128> D = std::nullopt);

    /// n == q + 1 - t
    bool consistent() const { return n == q + 1 - t; }

    /// Ordering and equality on the (q, n, t) triple only.
    std::strong_ordering operator<=>(const CurveParams& o) const;
    bool operator==(const CurveParams& o) const { return (*this <=> o) == 0; }

    std::string to_string() const;
};

/// Exact Hasse test t^2 <= 4q.
bool hasse_ok(i128 q, i128 t);

/// q + 1 - n; throws HasseViolation outside the Hasse interval.
i128 trace_of(i128 q, i128 n);

/// n == q + 1. Only meaningful for q >= 5; throws std::invalid_argument below.
bool is_supersingular(i128 q, i128 n);

/// t != 0 (mod q): the general ordinarity criterion over a prime field.
bool is_ordinary_trace(i128 q, i128 t);

struct EmbeddingDegree {
    i128 actual = 0;
    std::optional<int> nominal;

    bool matches_nominal() const { return !nominal || static_cast<i128>(*nominal) == actual; }
};

/// Multiplicative order of q modulo the prime n. Throws std::invalid_argument
/// when n is not prime or n divides q.
EmbeddingDegree embedding_degree(i128 q, i128 n, std::optional<int> nominal = std::nullopt);

struct AffinePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
    auto operator<=>(const AffinePoint&) const = default;
};

/// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_q, q an odd prime.
class WeierstrassCurve {
public:
    /// Reduces the coefficients mod q. Throws std::invalid_argument for a
    /// non-prime or even q and for a cubic with a repeated root.
    WeierstrassCurve(std::int64_t q, std::int64_t a2, std::int64_t a4, std::int64_t a6);

    std::int64_t q() const { return q_; }
    std::int64_t a2() const { return a2_; }
    std::int64_t a4() const { return a4_; }
    std::int64_t a6() const { return a6_; }

    /// x^3 + a2 x^2 + a4 x + a6 mod q.
    std::int64_t rhs(std::int64_t x) const;
    bool contains(const AffinePoint& p) const;

    std::string to_string() const;

    bool operator==(const WeierstrassCurve&) const = default;

private:
    std::int64_t q_, a2_, a4_, a6_;
};

inline constexpr std::int64_t kMaxCountingField = 10'000'000;
inline constexpr std::int64_t kMaxListingField = 100'000;
inline constexpr std::int64_t kMaxSearchField = 10'000;

/// #E(F_q) including the point at infinity, via the quadratic character sum.
/// Requires q <= 10^7.
std::int64_t curve_order(const WeierstrassCurve& curve);

/// All affine points sorted by (x, y). Requires q <= 10^5.
std::vector<AffinePoint> list_points(const WeierstrassCurve& curve);

/// First nonsingular curve of order n over F_q in the order a2 = 0 first, then
/// (a2, a4, a6) lexicographic. For q >= 5 every curve is isomorphic to one with
/// a2 = 0, so only that slice is searched there. Requires 3 <= q <= 10^4 prime;
/// throws HasseViolation when n is outside the Hasse interval.
std::optional<WeierstrassCurve> find_curve_with_order(i128 q, i128 n);

}  // namespace cyclescope
