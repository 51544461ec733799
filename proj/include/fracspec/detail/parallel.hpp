#pragma once

// Deterministic parallelism helpers.  Work is cut into fixed-size chunks
// whose partial results are combined in chunk order, so every reduction is
// bit-identical no matter how many workers ran it.

#include <atomic>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace fracspec::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls per_chunk(chunk_index, begin, end) for every chunk of [0, n).
/// Chunks may run on any worker; per_chunk must only write state owned by
/// its chunk index.
template <class F>
void for_each_chunk(std::size_t n, std::size_t chunk_size, unsigned threads, F&& per_chunk) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    threads = resolve_threads(threads);
    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t b = c * chunk_size;
            per_chunk(c, b, std::min(n, b + chunk_size));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::size_t b = c * chunk_size;
            per_chunk(c, b, std::min(n, b + chunk_size));
        }
    };
    std::vector<std::jthread> pool;
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
}

struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// Compensated sum of g(i) for i in [0, n), identical for any thread count.
template <class G>
double sum_generate(std::size_t n, G&& g, unsigned threads, std::size_t chunk_size = 4096) {
    if (n == 0) return 0.0;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<double> partial(n_chunks, 0.0);
    for_each_chunk(n, chunk_size, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        KahanAccumulator acc;
        for (std::size_t i = b; i < e; ++i) acc.add(g(i));
        partial[c] = acc.sum;
    });
    KahanAccumulator total;
    for (double p : partial) total.add(p);
    return total.sum;
}

inline double sum_span(std::span<const double> xs, unsigned threads) {
    return sum_generate(xs.size(), [&](std::size_t i) { return xs[i]; }, threads);
}

} // namespace fracspec::detail
