#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace facteval {

/// Per-item scoring loops run either as the serial reference or as the
/// OpenMP-parallel kernel. Both paths produce identical results: each index
/// writes only its own output slot and all reductions happen afterwards in a
/// fixed serial order.
enum class ExecMode { Serial, Parallel };

inline ExecMode exec_mode_for_parallelism(int parallelism) {
    return parallelism > 1 ? ExecMode::Parallel : ExecMode::Serial;
}

template <typename Fn>
void for_each_index(std::size_t n, ExecMode mode, Fn&& fn, int max_threads = 0) {
#ifdef _OPENMP
    if (mode == ExecMode::Parallel) {
        const long long count = static_cast<long long>(n);
        if (max_threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads)
            for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
        } else {
#pragma omp parallel for schedule(dynamic)
            for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)mode;
    (void)max_threads;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace facteval
