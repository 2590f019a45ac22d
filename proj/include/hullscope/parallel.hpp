#pragma once

#include <cstddef>
#include <functional>

namespace hullscope {

/// Number of workers used when a caller passes 0: the hardware concurrency (at least 1).
std::size_t default_workers();

/// Runs body(i) for i in [0, count) on `workers` threads (0 = default_workers()).
/// Indices are handed out in fixed-size chunks from a shared counter, so the set of
/// calls is the same for any worker count; callers must make body(i) depend on i only.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace hullscope
