#include "sugdg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace sugdg {

int thread_budget() {
    static const int budget = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
        n = std::min(n, 8);
        if (const char* env = std::getenv("SUGDG_THREADS")) {
            try {
                n = std::max(1, std::stoi(env));
            } catch (...) {
                // ignore malformed value, keep default
            }
        }
        return n;
    }();
    return budget;
}

void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& f) {
    const int workers = std::min<std::ptrdiff_t>(thread_budget(), n);
    if (workers <= 1 || n < 4) {
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::ptrdiff_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::ptrdiff_t i = next.fetch_add(1);
                if (i >= n) break;
                f(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace sugdg
