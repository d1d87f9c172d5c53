#pragma once

// Slow, obviously-correct reference implementations used as test oracles.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::map<std::int64_t, int> factor(std::int64_t n) {
    std::map<std::int64_t, int> f;
    for (std::int64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

inline std::int64_t phi(std::int64_t n) {
    std::int64_t c = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

inline std::int64_t order(std::int64_t q, std::int64_t n) {
    std::int64_t x = ((q % n) + n) % n, k = 1;
    while (x != 1 % n) {
        x = x * (((q % n) + n) % n) % n;
        ++k;
    }
    return k;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// #E(F_q) for y^2 = x^3 + a2 x^2 + a4 x + a6 by trying every (x, y).
inline std::int64_t point_count(std::int64_t q, std::int64_t a2, std::int64_t a4, std::int64_t a6) {
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < q; ++x) {
        const std::int64_t rhs = mod(((x * x % q) * x + a2 * (x * x % q) + a4 * x + a6) % q, q);
        for (std::int64_t y = 0; y < q; ++y)
            if (y * y % q == rhs) ++count;
    }
    return count;
}

inline bool hasse(std::int64_t q, std::int64_t t) { return t * t <= 4 * q; }

inline std::int64_t squarefree_part(std::int64_t n) {
    std::int64_t s = 1;
    for (auto [p, e] : factor(n))
        if (e % 2) s *= p;
    return s;
}

}  // namespace oracle
