#pragma once

// Grid evaluation of spectra and 2-D maps. Every grid point is independent,
// so the parallel kernel splits points across OpenMP threads and produces
// results bit-identical to the serial reference.

#include "giant_atom/core_model.hpp"

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace giant_atom {

enum class Execution { Serial, Parallel };

/// Threads used by Execution::Parallel; n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

namespace detail {

template <class Body>
void for_each_index(std::size_t count, Execution ex, Body&& body)
{
    if (ex == Execution::Serial) {
        for (std::size_t k = 0; k < count; ++k)
            body(k);
        return;
    }
    std::exception_ptr failure;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
    for (long long k = 0; k < n; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical(giant_atom_kernel_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace detail

/// rows[k] = {grid[k], f(grid[k])} with f returning Scattering.
template <class F>
std::vector<SpectrumRow> evaluate_spectrum(F&& f, std::span<const double> grid, Execution ex)
{
    std::vector<SpectrumRow> rows(grid.size());
    detail::for_each_index(grid.size(), ex, [&](std::size_t k) {
        const Scattering sc = f(grid[k]);
        rows[k] = {grid[k], sc.T, sc.R};
    });
    return rows;
}

/// Row-major values f(axis1[i], axis2[j]) at index i * axis2.size() + j.
template <class F>
std::vector<double> evaluate_map(F&& f, std::span<const double> axis1, std::span<const double> axis2,
                                 Execution ex)
{
    const std::size_t n2 = axis2.size();
    std::vector<double> out(axis1.size() * n2);
    detail::for_each_index(out.size(), ex, [&](std::size_t k) { out[k] = f(axis1[k / n2], axis2[k % n2]); });
    return out;
}

}  // namespace giant_atom
