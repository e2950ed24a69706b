#include "tg/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace tg {

namespace {
int g_threads = 0;
}

void set_thread_count(int n) { g_threads = std::max(0, n); }

int thread_count() {
    if (g_threads > 0) return g_threads;
    if (const char* e = std::getenv("TRANSGRESS_THREADS")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f) {
    std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1 || n < 256) {
        f(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t b = w * chunk, e = std::min(n, b + chunk);
        pool.emplace_back([&, w, b, e] {
            try {
                if (b < e) f(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace tg
