#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kclab {

/// Resolves a --jobs style request: 0 means "all available cores".
inline int effective_jobs(int requested) {
#ifdef _OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace kclab
