#include "dtk/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dtk {

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dtk
