#pragma once

#include <functional>

namespace qlock {

/// Worker count: set_thread_count() if called with n > 0, else the
/// QLOCK_THREADS environment variable, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Each index writes only its own result slot,
/// so outputs do not depend on scheduling. The first exception by index is
/// rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace qlock
