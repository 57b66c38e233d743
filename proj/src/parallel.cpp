#include "graphcx/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcx {

namespace {
int g_width = 0;
}

void set_parallelism(int width) { g_width = width < 0 ? 0 : width; }

int parallelism() {
#ifdef _OPENMP
    return g_width > 0 ? g_width : omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gcx
