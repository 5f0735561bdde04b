// Deterministic data-parallel helper: work is split into index chunks,
// evaluated on a small thread pool, and combined in chunk order, so the
// aggregate is identical for every worker count.

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pingpong {

inline unsigned worker_count() {
    if (const char* env = std::getenv("PINGPONG_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return 1;
}

// fn(begin, end) -> R over [begin, end); combine(acc, chunk_result) folds the
// per-chunk results in increasing index order.
template <typename R, typename ChunkFn, typename CombineFn>
R parallel_index_reduce(std::size_t n, R init, ChunkFn fn, CombineFn combine,
                        unsigned workers = worker_count()) {
    if (n == 0) return init;
    unsigned parts = workers;
    if (parts > n) parts = static_cast<unsigned>(n);
    if (parts <= 1) return combine(std::move(init), fn(0, n));
    std::vector<R> results(parts, init);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + parts - 1) / parts;
    for (unsigned p = 0; p < parts; ++p) {
        std::size_t b = p * chunk;
        std::size_t e = std::min(n, b + chunk);
        pool.emplace_back([&, p, b, e] { results[p] = fn(b, e); });
    }
    for (auto& t : pool) t.join();
    R acc = std::move(init);
    for (unsigned p = 0; p < parts; ++p) acc = combine(std::move(acc), std::move(results[p]));
    return acc;
}

}  // namespace pingpong
