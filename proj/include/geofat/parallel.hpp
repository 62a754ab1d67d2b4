#pragma once

#include <cstddef>
#include <functional>

namespace geofat {

/// Worker count: hardware concurrency, capped by GEOFAT_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Iterations
/// are handed out in contiguous chunks; body must only write to slots it owns.
/// The first exception thrown by any iteration is rethrown after joining.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace geofat
