#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace featgraph {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work items must be
// independent; keying results by index keeps the output deterministic
// regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = jobs < static_cast<int>(n) ? jobs : static_cast<int>(n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace featgraph
