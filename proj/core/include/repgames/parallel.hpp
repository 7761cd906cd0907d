#pragma once

#include <cstddef>
#include <functional>

namespace repgames {

// Worker count used by node-parallel loops; 0 selects hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n) on the worker pool. Each index is visited
// exactly once; the first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace repgames
