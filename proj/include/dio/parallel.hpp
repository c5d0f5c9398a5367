#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace dio {

// Deterministic chunked map-reduce over [lo, hi): the range is split into
// fixed chunks, workers claim chunks in any order, and the per-chunk results
// are merged in chunk order — so the outcome is byte-identical at any thread
// count.
template <typename R, typename Map, typename Merge>
R parallel_chunks(long lo, long hi, long chunk, int threads, R init, Map map,
                  Merge merge) {
    if (hi <= lo) return init;
    if (chunk < 1) chunk = 1;
    long nchunks = (hi - lo + chunk - 1) / chunk;
    std::vector<R> results(static_cast<size_t>(nchunks));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (long i; (i = next.fetch_add(1)) < nchunks;) {
            long a = lo + i * chunk;
            long b = std::min(hi, a + chunk);
            results[static_cast<size_t>(i)] = map(a, b);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    R acc = std::move(init);
    for (long i = 0; i < nchunks; ++i)
        acc = merge(std::move(acc), std::move(results[static_cast<size_t>(i)]));
    return acc;
}

}  // namespace dio
