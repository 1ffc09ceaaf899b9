#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rgg {

// Global thread cap: 0 = auto (hardware_concurrency, bounded by RGG_THREADS).
void set_thread_count(int n);
int thread_count();

// Runs fn(block_index) for every block in [0, n_blocks), distributing blocks
// over `threads` workers (0 = global default) with an atomic work queue.
// Results must be combined by the caller in a block-order-independent way
// (integer counts) or gathered per block and reduced sequentially (doubles),
// so that the outcome does not depend on the scheduling.
template <class Fn>
void parallel_blocks(std::uint64_t n_blocks, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = thread_count();
    if (threads <= 1 || n_blocks <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            fn(b);
        }
    };
    std::vector<std::thread> pool;
    const int used = static_cast<int>(std::min<std::uint64_t>(threads, n_blocks));
    pool.reserve(used - 1);
    for (int t = 1; t < used; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace rgg
