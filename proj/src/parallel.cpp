#include "qiraa/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qiraa {

int thread_cap() {
    const char* env = std::getenv("QIRAA_THREADS");
    if (!env || !*env) return 0;
    try {
        const int n = std::stoi(env);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}

void apply_thread_cap() {
#ifdef _OPENMP
    const int cap = thread_cap();
    if (cap > 0) omp_set_num_threads(cap);
#endif
}

} // namespace qiraa
