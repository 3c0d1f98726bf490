#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace smpath {

/// --threads default: SMPATH_THREADS if set, otherwise hardware concurrency.
inline int default_thread_count() {
    if (const char* env = std::getenv("SMPATH_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Runs body(i) for i in [0, n) on up to `threads` workers, each owning a
/// contiguous block. Callers write results into slot i only, so the outcome
/// is identical for any thread count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads < 1) threads = 1;
    const std::size_t workers = std::min<std::size_t>(threads, n ? n : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace smpath
