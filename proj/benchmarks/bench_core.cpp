#include <benchmark/benchmark.h>

#include "optomech/conditioning.hpp"
#include "optomech/config.hpp"
#include "optomech/linalg.hpp"
#include "optomech/model.hpp"
#include "optomech/state.hpp"

using namespace optomech;

namespace {

PhysicalParams at_detuning(double ratio)
{
    PhysicalParams p = SimConfig{}.params();
    p.detuning = ratio * p.omega_m;
    return p;
}

void bm_solve_lyapunov(benchmark::State& state)
{
    const ModelMatrices m = build_model(at_detuning(0.87));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_lyapunov(m.K, m.D));
}
BENCHMARK(bm_solve_lyapunov);

void bm_steady_state_fit(benchmark::State& state)
{
    const PhysicalParams p = at_detuning(0.87);
    for (auto _ : state) {
        const auto fit = fit_squeezed_thermal(CovMat(steady_state(p)).block({0}));
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(bm_steady_state_fit);

void bm_log_negativity(benchmark::State& state)
{
    const CovMat V(steady_state(at_detuning(0.86)));
    for (auto _ : state)
        benchmark::DoNotOptimize(log_negativity(V));
}
BENCHMARK(bm_log_negativity);

void bm_wigner_grid_201(benchmark::State& state)
{
    const CovMat M = CovMat(steady_state(at_detuning(0.87))).block({0});
    for (auto _ : state)
        benchmark::DoNotOptimize(wigner_grid_auto(M, 201));
}
BENCHMARK(bm_wigner_grid_201)->Unit(benchmark::kMillisecond);

// everything a conditioned detuning-scan point does, measurement chain included
void bm_conditioned_scan_point(benchmark::State& state)
{
    const PhysicalParams p = at_detuning(0.74);
    const ConditioningChoice choice{Strategy::ancilla_vacuum, 0.25 * 3.14159265358979,
                                    VacuumOffset::half};
    for (auto _ : state) {
        const CovMat V(steady_state(p));
        benchmark::DoNotOptimize(fit_squeezed_thermal(V.block({0})));
        benchmark::DoNotOptimize(fit_squeezed_thermal(V.block({1})));
        benchmark::DoNotOptimize(log_negativity(V));
        benchmark::DoNotOptimize(conditioned_mirror(p, choice));
    }
}
BENCHMARK(bm_conditioned_scan_point);

} // namespace

BENCHMARK_MAIN();
