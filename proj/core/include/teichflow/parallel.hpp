#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace teichflow {

/// Worker count for grid kernels. Initialised from TEICHFLOW_THREADS on first
/// use (default 1). Kernels only split independent rows, so every result is
/// bitwise identical for any thread count.
int thread_count();
void set_thread_count(int n);

/// Calls fn(begin, end) on contiguous slices of [0, n).
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace teichflow
