#pragma once

#include <functional>

namespace lambda_bound {

// Worker count: LAMBDA_BOUND_THREADS when set and positive, else the
// hardware concurrency (at least 1).
int thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. The first
// exception by index is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body, bool parallel = true);

}  // namespace lambda_bound
