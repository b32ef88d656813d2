#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace shadowcover {

// SHADOWCOVER_THREADS caps worker threads; default is single-threaded.
inline int thread_count() {
    const char* e = std::getenv("SHADOWCOVER_THREADS");
    if (!e) return 1;
    int v = std::atoi(e);
    if (v < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && v > static_cast<int>(hw) * 4) v = static_cast<int>(hw) * 4;
    return v;
}

// Runs fn(i) for i in [0, n). Work items must be independent; callers keep
// results in per-index slots so that reductions happen in index order and the
// outcome does not depend on the worker count.
template <class Fn>
void parallel_for_index(int n, Fn&& fn) {
    int workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace shadowcover
