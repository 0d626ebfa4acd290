#pragma once

#include <cstddef>
#include <functional>

namespace sugdg {

// Worker budget: SUGDG_THREADS if set (clamped to >= 1), else hardware
// concurrency capped at 8.
int thread_budget();

// Runs f(i) for i in [0, n). Workers write to disjoint slots only, so the
// result is identical for any thread count.
void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& f);

}  // namespace sugdg
