#include "rklab/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace rklab {

int configure_threads_from_env() {
  if (const char* env = std::getenv("RKLAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_num_procs() * 4));
    } catch (const std::exception&) {
      // malformed values leave the OpenMP default in place
    }
  }
  return worker_count();
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace rklab
