#pragma once

#include <cstddef>
#include <functional>

namespace maxreg {

/// Worker count: MAXREG_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks; results must be written
/// to per-index slots so reductions stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace maxreg
