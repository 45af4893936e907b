#pragma once

#include <cstddef>
#include <functional>

namespace sparsepois {

/// Worker count: NUM_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for every i in [0, count) on up to thread_count() threads.
/// Each index runs exactly once; callers write results into per-index slots
/// so the outcome never depends on scheduling. The first exception thrown by
/// any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sparsepois
