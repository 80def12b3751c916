#pragma once

namespace revivalkit::parallel {

/// Number of OpenMP threads kernels will use.
int thread_count();

/// Caps the OpenMP thread count. Values < 1 are ignored.
void set_thread_count(int n);

/// Applies REVIVALKIT_THREADS from the environment, if set and valid.
/// Returns the resulting thread count.
int configure_from_environment();

} // namespace revivalkit::parallel
