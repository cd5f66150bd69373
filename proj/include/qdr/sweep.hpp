#pragma once

#include <functional>

namespace qdr {

// Runs fn(0..n-1) across a small thread pool. Results must be written into
// preallocated slots indexed by i so row order stays deterministic. The
// first exception thrown by any worker is rethrown after all threads join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace qdr
