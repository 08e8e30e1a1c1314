#pragma once

#include <cstddef>
#include <functional>

namespace probeboost {

// Degree of parallelism from PROBEBOOST_THREADS, or 1 when unset/invalid.
std::size_t default_threads();

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
// written to per-index slots so the outcome is independent of scheduling. If
// any call throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace probeboost
