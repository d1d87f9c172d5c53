#include "cyclescope/int128.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyclescope {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(i128 v) {
    if (v >= 0) return to_string(static_cast<u128>(v));
    // -v overflows for the minimum value, so negate in unsigned space.
    return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
}

i128 parse_i128(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed integer literal: " + std::string(s));
    const u128 limit = neg ? (static_cast<u128>(1) << 127) : (static_cast<u128>(1) << 127) - 1;
    u128 v = 0;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("malformed integer literal: " + std::string(s));
        const unsigned digit = static_cast<unsigned>(c - '0');
        if (v > (limit - digit) / 10) throw std::out_of_range("integer literal out of range: " + std::string(s));
        v = v * 10 + digit;
    }
    return neg ? static_cast<i128>(static_cast<u128>(0) - v) : static_cast<i128>(v);
}

u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
    // The floating estimate is within a few units; settle it exactly.
    while (r > 0 && (r > n / r)) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::optional<u128> exact_sqrt(u128 n) {
    const u128 r = isqrt_u128(n);
    if (r * r == n) return r;
    return std::nullopt;
}

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

namespace {

u128 addmod(u128 a, u128 b, u128 m) {
    // a, b < m
    return a >= m - b ? a - (m - b) : a + b;
}

constexpr u128 kTwo64 = static_cast<u128>(1) << 64;
constexpr u128 kTwo96 = static_cast<u128>(1) << 96;

}  // namespace

u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (m <= kTwo64) return (a * b) % m;
    if (m <= kTwo96) {
        // Horner over 32-bit limbs of b keeps every intermediate below 2^128.
        u128 r = 0;
        for (int shift = 64; shift >= 0; shift -= 32) {
            const u128 limb = (b >> shift) & 0xffffffffu;
            r = ((r << 32) % m + (a * limb) % m) % m;
        }
        return r;
    }
    u128 r = 0;
    for (int bit = 127; bit >= 0; --bit) {
        r = addmod(r, r, m);
        if ((b >> bit) & 1) r = addmod(r, a, m);
    }
    return r;
}

u128 powmod(u128 base, u128 exp, u128 m) {
    if (m == 1) return 0;
    u128 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiplication overflow");
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit addition overflow");
    return r;
}

}  // namespace cyclescope
