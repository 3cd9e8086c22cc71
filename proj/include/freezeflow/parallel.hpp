#pragma once

#include <cstddef>
#include <functional>

namespace freezeflow {

// Worker count: hardware concurrency, capped by the FT_THREADS environment
// variable when it holds a positive integer.
std::size_t thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads.  Work is
// handed out in chunks from a shared counter; callers write results by index
// so the output does not depend on scheduling.  The first exception thrown
// by fn is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace freezeflow
