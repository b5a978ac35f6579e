#pragma once

#include <cstddef>
#include <functional>

namespace clab {

/// Worker count: CARLEMAN_LAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_limit();

/// Runs fn(i) for i in [0, count) on up to thread_limit() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clab
