#pragma once

#include <cstddef>

namespace mltc::parallel {

// Global worker cap for the OpenMP kernels. 0 means "whatever OpenMP
// defaults to", 1 forces the serial path. Results are bit-identical for any
// setting: parallel loops only ever write disjoint per-index slots, and all
// floating-point reductions are performed serially afterwards.
void set_max_threads(int n);
int max_threads();

// True when this invocation will actually fan out.
bool enabled_for(std::size_t n);

namespace detail {
void run_indexed(std::size_t n, void (*thunk)(void*, std::size_t), void* ctx);
}

// parallel_for(n, f): calls f(i) for i in [0, n). f must not touch shared
// mutable state other than its own output slot.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    detail::run_indexed(
        n,
        [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); },
        &f);
}

}  // namespace mltc::parallel
