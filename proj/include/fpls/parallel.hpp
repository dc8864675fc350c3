#pragma once

#include <cstddef>
#include <functional>

namespace fpls {

/// Worker count: FPLS_THREADS if set to a positive value, else the hardware
/// concurrency. A value of 0 (or unset) means auto.
int worker_count();

/// Runs fn(begin, end) over a static partition of [0, count). Results must
/// be written to disjoint locations; the partition does not depend on how
/// many workers actually run, so output is identical for any thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace fpls
