#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sweepout {

/// Worker cap from SWEEPOUT_THREADS (0 or unset = hardware concurrency).
inline int worker_count() {
    if (const char* env = std::getenv("SWEEPOUT_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<int>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n).  Results must be
/// written to disjoint slots so the outcome is scheduling-independent.
inline void parallel_for_ranges(int n, const std::function<void(int, int)>& fn) {
    int workers = std::min(worker_count(), std::max(1, n));
    if (workers <= 1 || n < 256) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int begin = w * chunk;
        int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace sweepout
