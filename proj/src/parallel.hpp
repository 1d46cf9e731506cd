#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace gw {

// Fixed-shape pairwise (tree) combination of per-block results. The shape
// depends only on the number of blocks, never on the thread count, so
// parallel reductions reproduce the single-threaded result bit for bit.
template <typename T>
T pairwise_combine(std::vector<T>& v) {
    if (v.empty()) return T{};
    size_t n = v.size();
    while (n > 1) {
        size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
        if (n & 1) {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return v[0];
}

// Splits [0, n_items) into fixed-size blocks, evaluates each block
// sequentially with fn(lo, hi) -> T, and combines block results pairwise.
// Blocks are handed out dynamically (atomic counter), which only affects
// which thread computes a block, not the value.
template <typename T, typename BlockFn>
T block_reduce(uint64_t n_items, uint64_t block_size, unsigned threads, BlockFn&& fn) {
    if (n_items == 0) return T{};
    if (block_size == 0) block_size = 1;
    const uint64_t n_blocks = (n_items + block_size - 1) / block_size;
    std::vector<T> partial(static_cast<size_t>(n_blocks));

    auto run = [&](std::atomic<uint64_t>& next) {
        for (;;) {
            uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) break;
            uint64_t lo = b * block_size;
            uint64_t hi = lo + block_size < n_items ? lo + block_size : n_items;
            partial[static_cast<size_t>(b)] = fn(lo, hi);
        }
    };

    std::atomic<uint64_t> next{0};
    if (threads <= 1 || n_blocks == 1) {
        run(next);
    } else {
        unsigned nt = threads < n_blocks ? threads : static_cast<unsigned>(n_blocks);
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back([&] { run(next); });
        for (auto& th : pool) th.join();
    }
    return pairwise_combine(partial);
}

// Plain parallel loop over blocks for side-effecting work on disjoint ranges.
template <typename BlockFn>
void block_for(uint64_t n_items, uint64_t block_size, unsigned threads, BlockFn&& fn) {
    if (n_items == 0) return;
    if (block_size == 0) block_size = 1;
    const uint64_t n_blocks = (n_items + block_size - 1) / block_size;
    std::atomic<uint64_t> next{0};
    auto run = [&] {
        for (;;) {
            uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) break;
            uint64_t lo = b * block_size;
            uint64_t hi = lo + block_size < n_items ? lo + block_size : n_items;
            fn(lo, hi);
        }
    };
    if (threads <= 1 || n_blocks == 1) {
        run();
        return;
    }
    unsigned nt = threads < n_blocks ? threads : static_cast<unsigned>(n_blocks);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

} // namespace gw
