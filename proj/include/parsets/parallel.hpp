#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace parsets {

// Worker cap: PARSETS_THREADS env var, else hardware concurrency.
inline int max_threads() {
    static const int cap = [] {
        if (const char* env = std::getenv("PARSETS_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }();
    return cap;
}

// Runs fn(i) for i in [0, count). Workers own disjoint contiguous ranges, so
// results are bitwise independent of the thread count as long as fn writes
// only to slot i. Reductions belong to the caller, in index order.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int nt = static_cast<int>(std::min<std::size_t>(max_threads(), count));
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (count + nt - 1) / nt;
    for (int tid = 0; tid < nt; ++tid) {
        const std::size_t lo = tid * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace parsets
