#pragma once

#include <cstdint>
#include <vector>

#include "noisyatom/ensemble.hpp"
#include "noisyatom/noise.hpp"
#include "noisyatom/schedule.hpp"
#include "noisyatom/state.hpp"

namespace noisyatom {

struct SbeSample {
    double t = 0.0;
    DensityMatrix rho;      // lab-frame density matrix of this realization
    double phi = 0.0;       // laser phase
    double coll_phase = 0.0;  // accumulated collisional phase, sum of dW_coll
};

// One realization of the stochastic Bloch equations. Noise enters as exact
// phase rotations (rho_eg *= e^{i dW}, phi += dW_phase) in a symmetric split
// around a fourth-order Runge-Kutta step of drive and decay with the phase
// frozen. Half increments are applied at t = 0 and at sample points, merged
// full increments in between.
// Rejects non-physical rho0 and dt above max_step(p).
std::vector<SbeSample> integrate_sbe(const SystemParams& p, std::uint64_t path_seed, const DensityMatrix& rho0,
                                     const SampleSchedule& schedule);

// Monte Carlo average over n_paths realizations with seeds derive_seed(master_seed, i).
EnsembleSeries ensemble_average(const SystemParams& p, std::size_t n_paths, const std::vector<Observable>& observables,
                                const SampleSchedule& schedule, std::uint64_t master_seed,
                                const DensityMatrix& rho0 = DensityMatrix::ground());

namespace reference {

EnsembleSeries ensemble_average(const SystemParams& p, std::size_t n_paths, const std::vector<Observable>& observables,
                                const SampleSchedule& schedule, std::uint64_t master_seed,
                                const DensityMatrix& rho0 = DensityMatrix::ground());

}  // namespace reference

}  // namespace noisyatom
