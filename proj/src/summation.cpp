#include "muskat/summation.hpp"

#include <algorithm>
#include <atomic>

namespace muskat {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
    int n = g_threads.load();
    if (n == 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

void parallel_for(int count, const std::function<void(int)>& body) {
    parallel_for(count, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) body(i);
    });
}

void parallel_for(int count, const std::function<void(int, int)>& body) {
    const int workers = std::min(thread_count(), std::max(count, 1));
    if (count <= 0) return;
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            // Contiguous static partition: worker w owns one index range.
            const int lo = static_cast<int>(static_cast<long>(count) * w / workers);
            const int hi = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
            if (lo < hi) body(lo, hi);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace muskat
