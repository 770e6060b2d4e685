#include <stdexcept>

#include "common/ordered_chunks.hpp"
#include "noisyatom/sde.hpp"
#include "sde/path_runner.hpp"

namespace noisyatom {

namespace detail {

double observable_value(Observable o, const SbeSample& s) {
    switch (o) {
        case Observable::rho_ee: return s.rho.rho_ee;
        case Observable::rho_gg: return s.rho.rho_gg;
        case Observable::re_rho_eg: return s.rho.rho_eg.real();
        case Observable::im_rho_eg: return s.rho.rho_eg.imag();
        case Observable::re_chi1: return (s.rho.rho_eg * std::polar(1.0, -s.phi)).real();
        case Observable::im_chi1: return (s.rho.rho_eg * std::polar(1.0, -s.phi)).imag();
        case Observable::trace: return s.rho.trace();
        case Observable::re_coll_factor: return std::cos(s.coll_phase);
        case Observable::im_coll_factor: return std::sin(s.coll_phase);
    }
    return 0.0;
}

}  // namespace detail

namespace {

constexpr std::size_t kPathsPerChunk = 64;

void check_count(std::size_t n_paths) {
    if (n_paths == 0) throw std::invalid_argument("ensemble_average: n_paths must be >= 1");
}

void accumulate_path(const detail::SbeStepper& stepper, std::uint64_t seed, EnsembleSeries& acc) {
    stepper.run(seed, [&](std::size_t k, const SbeSample& s) {
        for (std::size_t o = 0; o < acc.observables.size(); ++o)
            acc.stats[o][k].add(detail::observable_value(acc.observables[o], s));
    });
    ++acc.n_members;
}

}  // namespace

EnsembleSeries ensemble_average(const SystemParams& p, std::size_t n_paths, const std::vector<Observable>& observables,
                                const SampleSchedule& schedule, std::uint64_t master_seed, const DensityMatrix& rho0) {
    check_count(n_paths);
    const detail::SbeStepper stepper(p, schedule, rho0);
    const std::vector<double> times = schedule.times();
    EnsembleSeries total = EnsembleSeries::shaped(times, observables);
    detail::ordered_chunks(
        n_paths, kPathsPerChunk, total, [&] { return EnsembleSeries::shaped(times, observables); },
        [&](EnsembleSeries& local, std::size_t i) { accumulate_path(stepper, derive_seed(master_seed, i), local); },
        [](EnsembleSeries& acc, const EnsembleSeries& local) { acc.merge(local); });
    return total;
}

namespace reference {

EnsembleSeries ensemble_average(const SystemParams& p, std::size_t n_paths, const std::vector<Observable>& observables,
                                const SampleSchedule& schedule, std::uint64_t master_seed, const DensityMatrix& rho0) {
    check_count(n_paths);
    const detail::SbeStepper stepper(p, schedule, rho0);
    EnsembleSeries total = EnsembleSeries::shaped(schedule.times(), observables);
    for (std::size_t i = 0; i < n_paths; ++i) accumulate_path(stepper, derive_seed(master_seed, i), total);
    return total;
}

}  // namespace reference

}  // namespace noisyatom
