#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace rbm {

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to `workers`
// threads. Chunks carry their own RNG streams and write to per-chunk slots,
// so the result of any reduction over chunk index order is independent of
// the worker count and of scheduling.
inline void parallel_chunks(long n_chunks, int workers, const std::function<void(long)>& fn) {
    if (workers <= 1 || n_chunks <= 1) {
        for (long c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<long>(workers, n_chunks);
    pool.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace rbm
