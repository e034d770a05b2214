// Serial reference against the OpenMP kernel on the heavier spectra.

#include "giant_atom/continuum_scatter.hpp"
#include "giant_atom/discrete_scatter.hpp"
#include "giant_atom/roots.hpp"
#include "giant_atom/spectrum_kernels.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace giant_atom;

namespace {

constexpr double pi = std::numbers::pi;

Execution execution(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void regular_array(benchmark::State& state)
{
    const SystemParams p(1e4);
    const RegularArray arr(30, 1.0, 2.0 * pi);
    const auto grid = linear_grid(-2000.0, 2000.0, 100000);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evaluate_spectrum([&](double d) { return scatter_regular(p, arr, {d}); }, grid, execution(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(grid.size()));
}

void irregular_points(benchmark::State& state)
{
    const SystemParams p(1000.0);
    std::vector<CouplingPoint> pts;
    for (int k = 0; k < 16; ++k)
        pts.push_back({37.0 * k + 0.3 * k * k, 0.5 + 0.1 * k});
    const DiscreteCoupling c(pts);
    const auto grid = linear_grid(-50.0, 50.0, 20000);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evaluate_spectrum([&](double d) { return scatter_general(p, c, {d}); }, grid, execution(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(grid.size()));
}

void double_exponential_closed(benchmark::State& state)
{
    const SystemParams p(250.0);
    const auto dist = CouplingDistribution::double_exponential(1.0, pi / 10.0, 500.0 * pi);
    const auto grid = linear_grid(-3.0, 3.0, 100000);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_spectrum(
            [&](double d) { return scatter_continuum_closed(p, dist, {d}); }, grid, execution(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(grid.size()));
}

void raised_cosine_quadrature(benchmark::State& state)
{
    const SystemParams p(100.0);
    const auto dist = CouplingDistribution::raised_cosine(1.0, 3.0);
    const auto grid = linear_grid(-3.0, 3.0, 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evaluate_spectrum([&](double d) { return scatter_continuum(p, dist, {d}); }, grid, execution(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(grid.size()));
}

void theta_map(benchmark::State& state)
{
    const SystemParams p(1000.0);
    const auto detunings = linear_grid(-20.0, 20.0, 401);
    const auto thetas = linear_grid(0.0, 2.0 * pi, 401);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_map(
            [&](double d, double th) { return scatter_regular(p, RegularArray(4, 1.0, th), {d}).R; }, detunings,
            thetas, execution(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(detunings.size() * thetas.size()));
}

}  // namespace

BENCHMARK(regular_array)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(irregular_points)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(double_exponential_closed)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(raised_cosine_quadrature)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(theta_map)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
