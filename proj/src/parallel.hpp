#pragma once

#include <functional>

namespace rulekit {

/// Worker count: hardware concurrency, capped by RULEKIT_THREADS when set to a
/// positive integer.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

/// Same with an explicit worker count (oversubscription allowed).
void parallel_for(int n, const std::function<void(int)>& body, int max_workers);

}  // namespace rulekit
