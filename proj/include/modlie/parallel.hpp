#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace modlie {

/// Worker count: MODLIE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (clamped to [1, 64]).  "0" and unparsable values mean
/// auto.
unsigned worker_count();

/// Runs fn(begin, end, slot) over a static partition of [0, n) on the worker
/// pool.  The partition depends only on n and the worker count, and callers
/// must merge per-slot results order-independently, so the outcome is
/// bit-identical to a sequential scan.
void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace modlie
