#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace decim {

/// Run jobs 0..n-1 on up to `workers` threads. Callers pre-allocate one
/// result slot per job, so the merge order is deterministic regardless of
/// scheduling.
inline void parallel_jobs(int64_t n_jobs, int32_t workers,
                          const std::function<void(int64_t)>& fn) {
    if (workers <= 1 || n_jobs <= 1) {
        for (int64_t i = 0; i < n_jobs; ++i) fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    const int32_t n_threads = int32_t(std::min<int64_t>(workers, n_jobs));
    std::vector<std::thread> pool;
    pool.reserve(size_t(n_threads));
    for (int32_t t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (int64_t i = next.fetch_add(1); i < n_jobs; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline int32_t default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int32_t(hc);
}

}  // namespace decim
