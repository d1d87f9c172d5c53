#pragma once

// 128-bit integer helpers shared by every module.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cyclescope {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);
std::string to_string(u128 v);

/// Parses an optionally signed decimal string. Throws std::invalid_argument on
/// malformed input and std::out_of_range when the value does not fit.
i128 parse_i128(std::string_view s);

/// True when v fits in a signed 64-bit integer.
constexpr bool fits_i64(i128 v) {
    return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

u128 isqrt_u128(u128 n);

/// Returns the root if n is a perfect square.
std::optional<u128> exact_sqrt(u128 n);

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

/// Euclidean remainder in [0, m).
inline i128 mod_floor(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

i128 gcd128(i128 a, i128 b);

u128 mulmod(u128 a, u128 b, u128 m);
u128 powmod(u128 base, u128 exp, u128 m);

/// Checked arithmetic; throws std::overflow_error.
i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);

}  // namespace cyclescope
