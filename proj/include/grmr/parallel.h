// Small fork-join helper for embarrassingly parallel index loops. The worker
// count comes from the GRMR_THREADS environment variable (default: hardware
// concurrency). With one worker the loop runs inline, so single-core runs pay
// no thread overhead and results are bitwise identical across worker counts
// as long as the body only touches its own index.
#pragma once

#include <cstdlib>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace grmr {

inline int thread_count() {
    if (const char* env = std::getenv("GRMR_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) across thread_count() workers in contiguous blocks.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::int64_t block = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * block;
        const std::int64_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace grmr
