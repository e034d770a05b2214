#include "giant_atom/spectrum_kernels.hpp"

#include <omp.h>

#include <atomic>

namespace giant_atom {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

int thread_count()
{
    const int n = g_threads.load();
    return n > 0 ? n : omp_get_max_threads();
}

}  // namespace giant_atom
