#ifndef CHARSUM_PARALLEL_HPP
#define CHARSUM_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace charsum {

// Worker-count context handed down from the CLI. Modules never spawn threads
// on their own; they receive one of these and use the helpers below, which
// always reduce in fixed index order so results do not depend on the count.
struct Parallelism {
    int workers = 1;
    static Parallelism sequential() { return Parallelism{1}; }
};

// Evaluates fn(i) for i in [0, n) and returns the results indexed by i.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, const Parallelism& par, Fn fn) {
    std::vector<T> out(n);
    int w = par.workers;
    if (w <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    int tcount = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(w)));
    pool.reserve(tcount);
    for (int t = 0; t < tcount; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

// Splits [0, n) into contiguous chunks, runs fn(begin, end, chunk_index) on the
// pool, with chunk boundaries independent of the worker count. The caller
// merges per-chunk state in chunk order.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t nchunks, const Parallelism& par, Fn fn) {
    if (nchunks == 0) return;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t per = n / nchunks, rem = n % nchunks, pos = 0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t len = per + (c < rem ? 1 : 0);
        ranges.emplace_back(pos, pos + len);
        pos += len;
    }
    if (par.workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) fn(ranges[c].first, ranges[c].second, c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            fn(ranges[c].first, ranges[c].second, c);
        }
    };
    std::vector<std::thread> pool;
    int tcount = static_cast<int>(std::min<std::size_t>(nchunks, static_cast<std::size_t>(par.workers)));
    for (int t = 0; t < tcount; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace charsum

#endif
