#pragma once

#include <cstddef>
#include <functional>

namespace homog::numerics {

// HOMOG_INFER_THREADS when set and positive, else hardware concurrency (>= 1).
[[nodiscard]] int default_threads();

// Runs fn(i) for i in [0, n) on up to `threads` workers (0: default_threads()).
// Indices are claimed dynamically; fn must write only to slot i of its output.
// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace homog::numerics
