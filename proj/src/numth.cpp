#include "cyclescope/numth.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <string>

namespace cyclescope {

namespace {

constexpr std::uint32_t kTrialLimit = 1u << 16;
constexpr u128 kTwo96 = static_cast<u128>(1) << 96;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin_round(u128 n, u128 d, int s, u128 a) {
    a %= n;
    if (a == 0) return true;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        const u128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

u128 absdiff(u128 a, u128 b) { return a > b ? a - b : b - a; }

// Brent's variant of Pollard rho. n must be odd and composite.
u128 pollard_brent(u128 n) {
    for (u128 c = 1;; ++c) {
        auto f = [&](u128 v) { return (mulmod(v, v, n) + c) % n; };
        u128 y = 2, x = 2, ys = 2, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t kBatch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                const std::uint64_t steps = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y);
                    q = mulmod(q, absdiff(x, y), n);
                }
                g = gcd_u128(q, n);
                k += kBatch;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u128(absdiff(x, ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(u128 n, std::map<u128, int>& out) {
    if (n == 1) return;
    if (is_prime(static_cast<i128>(n))) {
        ++out[n];
        return;
    }
    const u128 d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

std::span<const int> table_for(int k) {
    static constexpr std::array<int, 2> p1{-1, 1};
    static constexpr std::array<int, 2> p2{1, 1};
    static constexpr std::array<int, 3> p3{1, 1, 1};
    static constexpr std::array<int, 3> p4{1, 0, 1};
    static constexpr std::array<int, 5> p5{1, 1, 1, 1, 1};
    static constexpr std::array<int, 3> p6{1, -1, 1};
    static constexpr std::array<int, 5> p8{1, 0, 0, 0, 1};
    static constexpr std::array<int, 5> p10{1, -1, 1, -1, 1};
    static constexpr std::array<int, 5> p12{1, 0, -1, 0, 1};
    static constexpr std::array<int, 9> p16{1, 0, 0, 0, 0, 0, 0, 0, 1};
    switch (k) {
        case 1: return p1;
        case 2: return p2;
        case 3: return p3;
        case 4: return p4;
        case 5: return p5;
        case 6: return p6;
        case 8: return p8;
        case 10: return p10;
        case 12: return p12;
        case 16: return p16;
        default: return {};
    }
}

}  // namespace

i128 Factorization::value() const {
    i128 v = 1;
    for (const auto& pp : factors)
        for (int e = 0; e < pp.exponent; ++e) v = checked_mul(v, pp.prime);
    return v;
}

std::vector<i128> Factorization::divisors() const {
    std::vector<i128> out{1};
    for (const auto& pp : factors) {
        const std::size_t base = out.size();
        i128 power = 1;
        for (int e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(i128 n) {
    if (n < 2) return false;
    static constexpr std::array<int, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int p : kBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    const u128 un = static_cast<u128>(n);
    u128 d = un - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : kBases)
        if (!miller_rabin_round(un, d, s, static_cast<u128>(a))) return false;

    // Deterministic bound of the fixed base set.
    static const u128 kDeterministicLimit = static_cast<u128>(parse_i128("3317044064679887385961981"));
    if (un < kDeterministicLimit) return true;

    std::mt19937_64 gen(0x6379636c65ULL);
    for (int round = 0; round < 64; ++round) {
        const u128 a = ((static_cast<u128>(gen()) << 64) | gen()) % (un - 3) + 2;
        if (!miller_rabin_round(un, d, s, a)) return false;
    }
    return true;
}

i128 isqrt(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative value " + to_string(n));
    return static_cast<i128>(isqrt_u128(static_cast<u128>(n)));
}

bool is_perfect_square(i128 n) {
    if (n < 0) return false;
    return exact_sqrt(static_cast<u128>(n)).has_value();
}

Factorization factorize(i128 n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1, got " + to_string(n));
    if (static_cast<u128>(n) >= kTwo96)
        throw CapabilityError("factorize supports n < 2^96, got " + to_string(n));
    Factorization f;
    f.n = n;
    u128 m = static_cast<u128>(n);
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u128>(p) * p > m) break;
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({static_cast<i128>(p), e});
    }
    if (m > 1) {
        std::map<u128, int> rest;
        split_into(m, rest);
        for (const auto& [p, e] : rest) f.factors.push_back({static_cast<i128>(p), e});
    }
    return f;
}

SquarefreeDecomposition squarefree_decomposition(i128 n) {
    if (n < 1) throw std::invalid_argument("squarefree decomposition requires n >= 1");
    const Factorization f = factorize(n);
    i128 d = 1, y = 1;
    for (const auto& pp : f.factors) {
        if (pp.exponent % 2 == 1) d *= pp.prime;
        for (int e = 0; e < pp.exponent / 2; ++e) y *= pp.prime;
    }
    return {d, y};
}

bool is_squarefree(i128 n) {
    if (n < 1) return false;
    const Factorization f = factorize(n);
    return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool cyclotomic_supported(int k) { return !table_for(k).empty(); }

std::span<const int> cyclotomic_coefficients(int k) {
    auto t = table_for(k);
    if (t.empty()) throw std::invalid_argument("no cyclotomic table for k = " + std::to_string(k));
    return t;
}

i128 cyclotomic_eval(int k, i128 x) {
    const auto coeffs = cyclotomic_coefficients(k);
    i128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = checked_add(checked_mul(acc, x), *it);
    return acc;
}

i128 cyclotomic_mod(int k, i128 x, i128 m) {
    if (m < 1) throw std::invalid_argument("cyclotomic_mod requires m >= 1");
    const auto coeffs = cyclotomic_coefficients(k);
    const u128 um = static_cast<u128>(m);
    const u128 xr = static_cast<u128>(mod_floor(x, m));
    u128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = mulmod(acc, xr, um);
        acc = static_cast<u128>(mod_floor(static_cast<i128>(acc) + *it, m));
    }
    return static_cast<i128>(acc);
}

i128 euler_phi(const Factorization& f) {
    i128 phi = 1;
    for (const auto& pp : f.factors) {
        phi *= pp.prime - 1;
        for (int e = 1; e < pp.exponent; ++e) phi *= pp.prime;
    }
    return phi;
}

i128 multiplicative_order(i128 q, i128 n) {
    if (n < 2) throw std::invalid_argument("multiplicative_order requires n >= 2");
    if (gcd128(q, n) != 1)
        throw std::invalid_argument("multiplicative_order requires gcd(q, n) = 1, got q = " + to_string(q) +
                                    ", n = " + to_string(n));
    const u128 un = static_cast<u128>(n);
    const u128 base = static_cast<u128>(mod_floor(q, n));
    i128 order = euler_phi(factorize(n));
    for (const auto& pp : factorize(order).factors) {
        while (order % pp.prime == 0 && powmod(base, static_cast<u128>(order / pp.prime), un) == 1)
            order /= pp.prime;
    }
    return order;
}

std::optional<CmSolution> solve_cm_equation(i128 q, i128 D) {
    if (!is_prime(q)) throw std::invalid_argument("solve_cm_equation requires prime q, got " + to_string(q));
    if (D < 1 || !is_squarefree(D))
        throw std::invalid_argument("solve_cm_equation requires positive squarefree D, got " + to_string(D));
    if (D > 4 * q) throw std::invalid_argument("D > 4q has no solution with y >= 1");
    for (i128 y = 1; D * y * y <= 4 * q; ++y) {
        const i128 rest = 4 * q - D * y * y;
        if (auto t = exact_sqrt(static_cast<u128>(rest))) return CmSolution{q, D, static_cast<i128>(*t), y};
    }
    return std::nullopt;
}

std::vector<std::int64_t> admissible_cofactors(int k1, std::int64_t d_max) {
    if (!cyclotomic_supported(k1)) throw std::invalid_argument("unsupported embedding degree " + std::to_string(k1));
    if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d <= d_max; ++d) {
        const auto f = factorize(d);
        const bool ok = std::all_of(f.factors.begin(), f.factors.end(),
                                    [k1](const PrimePower& pp) { return pp.prime % k1 == 1; });
        if (ok) out.push_back(d);
    }
    return out;
}

}  // namespace cyclescope
