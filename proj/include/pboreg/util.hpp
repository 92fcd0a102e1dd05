#pragma once

#include <cstddef>
#include <functional>

namespace pboreg {

/// Runs fn(0..n-1), distributing indices across up to `threads` workers.
/// Serial when threads <= 1. The first exception thrown by any worker is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace pboreg
