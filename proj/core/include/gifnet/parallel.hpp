#pragma once

#include <cstddef>
#include <functional>

namespace gifnet {

// Worker count: `requested` if nonzero, else hardware concurrency; always
// capped by GIFNET_THREADS when set.
std::size_t worker_count(std::size_t requested = 0);

// Runs body(i) for i in [0, n) on `workers` threads with a static
// round-robin split. The first exception thrown is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

} // namespace gifnet
