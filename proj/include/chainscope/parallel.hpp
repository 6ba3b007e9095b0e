#pragma once

#include <cstddef>
#include <functional>

namespace chainscope {

/// Worker count: set_worker_count() if called with n > 0, else
/// CHAINSCOPE_THREADS, else hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Runs fn(i) for i in [0, n) across workers. Each index is handled by exactly
/// one worker, so writes to per-index slots are race-free and results do not
/// depend on the worker count. The exception of the lowest failing index is
/// rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace chainscope
