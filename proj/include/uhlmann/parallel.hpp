#pragma once

#include <cstddef>
#include <functional>

namespace uhlmann {

/// Worker count: UHLMANN_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads.
/// After the first exception no new indices are started; it is rethrown once all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace uhlmann
