#pragma once

// Deterministic index-space parallelism. Work items must be independent
// (each index derives its own RNG stream) and write only to their own
// output slot, so the result is identical for any thread count. Thread
// count comes from the MECOFF_THREADS environment variable, default 1.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mecoff {

inline int thread_count() {
    if (const char* env = std::getenv("MECOFF_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    const int threads = thread_count();
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const size_t lo = t * chunk;
        const size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace mecoff
