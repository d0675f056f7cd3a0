#pragma once

#include <functional>

namespace djcm {

// Worker budget: DRIVEN_JCM_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int max_threads();

// Runs body(0..n-1) over contiguous index ranges, one range per worker.
// Deterministic as long as each index writes only its own slots. The first
// exception thrown by any worker is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace djcm
