// Parallel kernels against their serial references on identical inputs.
#include <benchmark/benchmark.h>

#include "noisyatom/sde.hpp"
#include "noisyatom/spectrum.hpp"
#include "noisyatom/trajectory.hpp"

using namespace noisyatom;

namespace {

const SystemParams kParams(1.0, 0.0, 0.05, 5.0, 0.2);

void BM_SpectrumParallel(benchmark::State& st) {
    const RegressionInputs in = regression_inputs(kParams);
    const auto grid = default_grid();
    for (auto _ : st) benchmark::DoNotOptimize(spectrum_resolvent(in, grid));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
}

void BM_SpectrumSerial(benchmark::State& st) {
    const RegressionInputs in = regression_inputs(kParams);
    const auto grid = default_grid();
    for (auto _ : st) benchmark::DoNotOptimize(reference::spectrum_resolvent(in, grid));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
}

const SampleSchedule& sde_schedule() {
    static const SampleSchedule s = SampleSchedule::at_times(max_step(kParams), {10.0, 20.0});
    return s;
}

void BM_SdeParallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(ensemble_average(kParams, n, {Observable::rho_ee}, sde_schedule(), 1));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SdeSerial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::ensemble_average(kParams, n, {Observable::rho_ee}, sde_schedule(), 1));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_TrajectoryParallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(ensemble_density(kParams, n, sde_schedule(), 1));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_TrajectorySerial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::ensemble_density(kParams, n, sde_schedule(), 1));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_SpectrumParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SdeParallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SdeSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryParallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectorySerial)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
