#pragma once

#include <cstddef>
#include <functional>

namespace vadb {

// requested > 0 wins; otherwise VADB_WORKERS; otherwise the hardware thread count.
int resolve_workers(int requested);

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// processed exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace vadb
