#pragma once

namespace rklab {

/// Applies the RKLAB_THREADS environment variable (if set to a positive
/// integer) as a cap on the OpenMP worker count. Returns the resulting cap.
int configure_threads_from_env();

/// Current OpenMP worker cap.
int worker_count();

}  // namespace rklab
