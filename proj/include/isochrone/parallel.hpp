#pragma once

#include <cstddef>
#include <functional>

namespace isochrone {

/// Worker count: ISOCHRONE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_budget();

/// Calls body(i) for i in [0, count) on up to thread_budget() threads. The
/// first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace isochrone
