#pragma once

#include <cstddef>
#include <functional>

namespace uq2 {

// Worker count: UQ2_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
unsigned thread_count();

// Runs body(t) for t in [0, n) on up to thread_count() threads.  Each index
// is handled exactly once; callers write results into per-index slots so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace uq2
