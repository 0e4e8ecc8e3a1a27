#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace dgs {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) across the given number of threads.
/// Work items must be independent; callers that need a deterministic result
/// combine per-item outputs in index order afterwards.
inline void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
    const int n_threads = std::min<size_t>(resolve_thread_count(threads), count);
    if (n_threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace dgs
