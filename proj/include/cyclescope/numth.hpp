#pragma once

// Exact integer arithmetic: primality, factoring, squarefree decomposition,
// cyclotomic values, multiplicative orders and the CM equation.
//
// All functions are pure. Values are carried in signed 128-bit integers.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclescope/int128.hpp"

namespace cyclescope {

/// Raised when an input is outside the range a routine is built for
/// (e.g. factoring beyond 96 bits).
class CapabilityError : public std::range_error {
public:
    using std::range_error::range_error;
};

struct PrimePower {
    i128 prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    i128 n = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    /// Multiplies the factors back together.
    i128 value() const;
    std::vector<i128> divisors() const;
};

/// Miller-Rabin. The fixed base set {2, 3, ..., 41} is deterministic for every
/// n < 3.3e24 (which covers all n < 2^81). Above that 64 further rounds with
/// bases drawn from a fixed-seed generator bound the error by 4^-64 = 2^-128.
bool is_prime(i128 n);

/// Floor square root. Throws std::domain_error for negative input.
i128 isqrt(i128 n);

bool is_perfect_square(i128 n);

/// Trial division followed by Pollard-Brent. Supports 1 <= n < 2^96 and throws
/// CapabilityError beyond that; std::invalid_argument for n < 1.
Factorization factorize(i128 n);

struct SquarefreeDecomposition {
    i128 squarefree;  // D
    i128 root;        // y with n = D * y^2
};

SquarefreeDecomposition squarefree_decomposition(i128 n);

/// D such that n = D * y^2 with D squarefree.
inline i128 squarefree_part(i128 n) { return squarefree_decomposition(n).squarefree; }

bool is_squarefree(i128 n);

/// Cyclotomic indices with a built-in coefficient table.
inline constexpr int kSupportedCyclotomic[] = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16};

bool cyclotomic_supported(int k);

/// Coefficients of Phi_k from the constant term upwards.
std::span<const int> cyclotomic_coefficients(int k);

/// Exact Phi_k(x). Throws std::invalid_argument for unsupported k and
/// std::overflow_error when the value leaves 128-bit range.
i128 cyclotomic_eval(int k, i128 x);

/// Phi_k(x) mod m, for any x and m >= 1.
i128 cyclotomic_mod(int k, i128 x, i128 m);

/// Smallest k >= 1 with q^k = 1 (mod n). Requires n >= 2 and gcd(q, n) = 1.
/// Computed by stripping prime factors off Euler's phi(n).
i128 multiplicative_order(i128 q, i128 n);

i128 euler_phi(const Factorization& f);

struct CmSolution {
    i128 q;
    i128 D;
    i128 t;  // t >= 0
    i128 y;  // y >= 1
    bool operator==(const CmSolution&) const = default;
};

/// Solves 4q - t^2 = D y^2 by scanning y = 1 .. floor(2 sqrt(q / D)).
/// Returns the solution with the smallest y (t >= 0). The other solutions of
/// the same sign family are (+-t, +-y).
/// Throws std::invalid_argument when q is not prime, D is not a positive
/// squarefree integer, or D > 4q.
std::optional<CmSolution> solve_cm_equation(i128 q, i128 D);

/// Every d in 2..d_max whose prime factors are all 1 (mod k1).
std::vector<std::int64_t> admissible_cofactors(int k1, std::int64_t d_max);

}  // namespace cyclescope
