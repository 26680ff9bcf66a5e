#include "mltc/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mltc::parallel {

namespace {
int g_max_threads = 0;  // 0 = library default
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }

int max_threads() {
#ifdef _OPENMP
    if (g_max_threads > 0) return g_max_threads;
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool enabled_for(std::size_t n) { return n > 1 && max_threads() > 1; }

namespace detail {

void run_indexed(std::size_t n, void (*thunk)(void*, std::size_t), void* ctx) {
#ifdef _OPENMP
    if (enabled_for(n)) {
        const int threads = max_threads();
        const long long count = (long long)n;
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long i = 0; i < count; ++i) {
            thunk(ctx, (std::size_t)i);
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) thunk(ctx, i);
}

}  // namespace detail

}  // namespace mltc::parallel
