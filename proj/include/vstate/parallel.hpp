#pragma once

#include <cstddef>
#include <functional>

namespace vstate {

// Worker cap: VSTATE_THREADS if set and positive, else hardware concurrency
// (at least 1).
unsigned worker_count();

// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks,
// one per worker; each index is visited exactly once, so results written to
// per-index slots do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vstate
