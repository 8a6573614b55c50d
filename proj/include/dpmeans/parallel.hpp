#pragma once

#include <cstddef>
#include <functional>

namespace dpmeans {

// Worker count: hardware concurrency capped by DPMEANS_THREADS when set.
unsigned thread_count();

// Runs body(i) for i in [0, n); indices are handed out dynamically.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dpmeans
