#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "ppinv/error.hpp"

namespace ppinv {

/// Limits for exhaustive scans. `threads` only changes speed, never results.
struct ScanPolicy {
    std::uint64_t bound = std::uint64_t{1} << 24;
    unsigned threads = 1;
};

inline void require_scannable(std::uint64_t size, const ScanPolicy& policy) {
    if (size > policy.bound)
        throw ScanBoundError("exhaustive scan over " + std::to_string(size) +
                             " elements exceeds scan bound " + std::to_string(policy.bound));
}

/// Calls fn(lo, hi) on disjoint chunks covering [0, count).
template <class Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
    const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(count / 64, 1));
    if (workers == 1) {
        fn(std::uint64_t{0}, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t step = (count + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * step;
        const std::uint64_t hi = std::min(count, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
}

}  // namespace ppinv
