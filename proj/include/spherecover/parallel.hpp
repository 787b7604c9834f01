#pragma once

#include <cstddef>
#include <functional>

namespace spherecover {

// Thread budget: SPHERECOVER_THREADS when set (clamped to >= 1), else 1.
// Single-threaded by default keeps every run trivially deterministic; the
// parallel path writes results by index so raising the budget cannot change
// any output.
unsigned max_threads();

// Runs fn(i) for i in [0, count) across at most max_threads() threads.
// fn must only write to per-index state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace spherecover
