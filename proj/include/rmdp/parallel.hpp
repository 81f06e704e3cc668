#pragma once

#include <cstddef>
#include <functional>

namespace rmdp {

/// Worker count: ROBUST_MDP_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/**
 * Calls body(i) for i in [0, n). Runs inline when n < min_parallel or only one
 * worker is available; otherwise splits the range into contiguous chunks.
 * The first exception thrown by any worker is rethrown.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t min_parallel = 64);

} // namespace rmdp
