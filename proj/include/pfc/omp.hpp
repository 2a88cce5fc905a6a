#pragma once

// Include this instead of <omp.h> so the library still builds without OpenMP.

#if defined(_OPENMP)
#include <omp.h>
namespace pfc {
constexpr bool use_omp = true;
} // namespace pfc
#else
namespace pfc {
constexpr bool use_omp = false;
} // namespace pfc
inline int omp_get_thread_num() { return 0; }
inline int omp_get_max_threads() { return 1; }
#endif
