#pragma once

#include <cstddef>
#include <functional>

namespace onofri {

// Worker cap: ONOFRI_LAB_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. Each
// index is visited exactly once; the first exception is rethrown after all
// workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace onofri
