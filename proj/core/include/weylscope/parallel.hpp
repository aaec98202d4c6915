#pragma once

#include <cstddef>
#include <functional>

namespace weylscope {

int default_workers();

/// Runs fn(unit) for unit = 0..units-1 across `workers` threads. Units are
/// dealt in fixed contiguous blocks by index, and callers store results into
/// index-addressed slots, so output is identical for any worker count.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t units, int workers, const std::function<void(std::size_t)>& fn);

} // namespace weylscope
