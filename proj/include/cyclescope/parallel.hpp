#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace cyclescope {

/// Splits [lo, hi] into contiguous chunks, runs body(chunk_lo, chunk_hi, out)
/// on up to `workers` threads and concatenates the outputs in chunk order, so
/// the result does not depend on the worker count.
template <class T, class Body>
std::vector<T> parallel_collect(std::int64_t lo, std::int64_t hi, unsigned workers, Body body) {
    std::vector<T> result;
    if (hi < lo) return result;
    const std::int64_t span = hi - lo + 1;
    const std::int64_t chunks = std::clamp<std::int64_t>(workers, 1, span);
    if (chunks == 1) {
        body(lo, hi, result);
        return result;
    }
    std::vector<std::vector<T>> parts(static_cast<std::size_t>(chunks));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(chunks));
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t a = lo + span * c / chunks;
        const std::int64_t b = lo + span * (c + 1) / chunks - 1;
        threads.emplace_back([&, a, b, c] {
            try {
                body(a, b, parts[static_cast<std::size_t>(c)]);
            } catch (...) {
                errors[static_cast<std::size_t>(c)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& p : parts) result.insert(result.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return result;
}

}  // namespace cyclescope
