// Static partitioning of index ranges over worker threads.
#pragma once

#include <cstddef>
#include <functional>

namespace tg {

// 0 means: TRANSGRESS_THREADS if set, else 1.
void set_thread_count(int n);
int thread_count();

// Calls f(begin, end) on disjoint chunks covering [0, n). Chunks are fixed by
// n and the thread count, so results written per index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f);

}  // namespace tg
