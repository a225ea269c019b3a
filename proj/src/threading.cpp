#include "kronkit/threading.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kronkit {

#ifdef _OPENMP

namespace {
int default_threads() {
    static const int value = omp_get_max_threads();
    return value;
}
} // namespace

void set_num_threads(int n) {
    omp_set_num_threads(n > 0 ? n : default_threads());
}

int max_threads() { return omp_get_max_threads(); }

#else

void set_num_threads(int) {}
int max_threads() { return 1; }

#endif

} // namespace kronkit
