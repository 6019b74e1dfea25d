#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace qbild {

// Number of worker threads to use: hardware concurrency, capped by the
// QBILD_THREADS environment variable when set. Always at least 1.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* cap = std::getenv("QBILD_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && v < hw) hw = static_cast<int>(v);
    }
    return hw;
}

// Runs body(i) for i in [0, n) across the thread budget with static chunking.
// Each index is visited exactly once, so writes into preallocated slot i give
// results independent of the schedule. The first exception thrown by any
// worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::int64_t n, Body&& body) {
    if (n <= 0) return;
    const int workers = std::min<std::int64_t>(thread_budget(), n);
    if (workers == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = n * w / workers;
        const std::int64_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qbild
