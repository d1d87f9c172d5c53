#pragma once

#include <doctest.h>

#include "cyclescope/int128.hpp"

namespace doctest {
template <>
struct StringMaker<cyclescope::i128> {
    static String convert(cyclescope::i128 v) { return cyclescope::to_string(v).c_str(); }
};
template <>
struct StringMaker<cyclescope::u128> {
    static String convert(cyclescope::u128 v) { return cyclescope::to_string(v).c_str(); }
};
}  // namespace doctest
