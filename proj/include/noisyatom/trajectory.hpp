#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "noisyatom/dressed.hpp"
#include "noisyatom/ensemble.hpp"
#include "noisyatom/schedule.hpp"
#include "noisyatom/spectrum.hpp"

namespace noisyatom {

enum class JumpKind { collision, spontaneous };

const char* to_string(JumpKind k);

struct Jump {
    double t;
    JumpKind kind;
};

struct PhaseObservation {
    double dphi = 0.0;  // wrapped to (-pi, pi]
    double sphi = 0.0;  // unwrapped along the trajectory
    bool valid = false;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<AtomState> states;
    std::vector<Jump> jumps;
    std::vector<PhaseObservation> phase_obs;
};

// Quantum-jump unraveling of the noisy Bloch equations, starting from |g>
// with phi = 0:
//  - laser phase diffusion: phi += N(0, 2 L h) with the lab-frame state held
//    fixed (an exact rotation of the excited amplitude in the laser frame);
//  - collisions: dephasing events arrive at rate Gamma/2 and an odd number of
//    them within an interval applies 2S^z, i.e. probability (1 - e^{-Gamma h})/2,
//    which reproduces the coherence damping Gamma of the averaged equations;
//  - spontaneous emission at rate 2 gamma |amp_e|^2: the state follows the exact
//    non-Hermitian propagator unnormalized and projects to |g> once its norm
//    drops below a uniform threshold, which is then redrawn.
// Noise is split symmetrically around the coherent step (half intervals at
// t = 0 and at samples, merged full intervals in between).
// Rejects dt above max_step(p) and per-step jump probability above 0.1.
TrajectoryRecord run_trajectory(const SystemParams& p, std::uint64_t seed, const SampleSchedule& schedule);
TrajectoryRecord run_trajectory(const SystemParams& p, std::uint64_t seed, double t_end, double dt,
                                std::size_t stride = 1);

// Trajectory average at the schedule's samples, seeds derive_seed(master_seed, i).
// Supports rho_ee, rho_gg, re/im_rho_eg, re/im_chi1 and trace. Requires n_traj >= 100.
EnsembleSeries ensemble_density(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                std::uint64_t master_seed,
                                const std::vector<Observable>& observables = {Observable::rho_ee, Observable::re_chi1,
                                                                              Observable::im_chi1});

class PhaseHistogram {
public:
    static constexpr int kBins = 64;

    void add(double dphi);
    void merge(const PhaseHistogram& o);

    // Bin k covers (-pi + k w, -pi + (k + 1) w], w = 2 pi / 64.
    static int bin_of(double dphi);
    static double bin_center(int k);

    const std::array<std::uint64_t, kBins>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    double max_min_ratio() const;  // +inf when some bin is empty
    int argmax() const;

private:
    std::array<std::uint64_t, kBins> counts_{};
    std::uint64_t total_ = 0;
};

struct ModeCheck {
    bool present = false;
    double target = 0.0;
    double argmax_center = 0.0;
    std::uint64_t peak = 0;
    std::uint64_t edge = 0;
};

// Plain bin argmax within pi/2 of target (circularly). A mode is present when
// that argmax lies within pi/8 of target and its count exceeds 1.1 times the
// larger of the two window-edge bins.
ModeCheck mode_near(const PhaseHistogram& h, double target);
bool bimodal_zero_pi(const PhaseHistogram& h);
bool unimodal_at_pi(const PhaseHistogram& h);
bool structureless(const PhaseHistogram& h, double max_ratio = 2.0);

struct PhaseStatistics {
    PhaseHistogram histogram;                        // samples with t >= t_discard only
    std::vector<std::pair<double, double>> scatter;  // (t, dphi) of the first record, valid samples
    std::size_t n_invalid = 0;
    double t_discard = 0.0;
};

PhaseStatistics phase_statistics(const std::vector<TrajectoryRecord>& records, double t_discard);

// Runs n_traj trajectories and accumulates the histogram without keeping records.
PhaseStatistics phase_statistics_ensemble(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                          std::uint64_t master_seed, double t_discard);

struct PhaseCorrelation {
    std::vector<double> taus;
    std::vector<double> values;  // C_cos(tau) / C_cos(0)
    double window = 0.0;         // length of the analysed stretch
    double c = 0.0;              // normalization, 1 / unnormalized C_cos(0)
    std::size_t n_samples = 0;   // valid samples in the stretch
};

// Mean-subtracted autocorrelation of cos(dphi) over samples with t >= t_discard,
// invalid samples excluded pairwise. Each tau must be a whole number of sample
// intervals. Throws NumericalError("degenerate-series") on zero variance.
PhaseCorrelation cos_correlation(const TrajectoryRecord& record, const std::vector<double>& taus, double t_discard);

// Same estimator on a uniformly sampled series.
PhaseCorrelation cos_correlation_series(const std::vector<double>& cos_values, const std::vector<char>& valid,
                                        double sample_dt, const std::vector<double>& taus);

struct TrajectorySpectrumOptions {
    std::size_t n_traj = 500000;
    double dt = 0.0;          // 0 selects max_step(p)
    std::uint64_t seed = 1;
    double t_discard = -1.0;  // negative selects 10 / gamma
    double t_average = -1.0;  // negative selects 10 / gamma
    std::size_t stride = 50;  // steps between samples inside the averaging window
};

struct TrajectorySteadyState {
    cplx chi1;
    double chi4 = 0.0;
    // Covariance of the estimates (Re chi1, Im chi1, chi4), already divided by n.
    std::array<std::array<double, 3>, 3> cov{};
    std::size_t n_traj = 0;
};

TrajectorySteadyState estimate_steady_state(const SystemParams& p, const TrajectorySpectrumOptions& opt);

// Stationary averages from trajectories fed through the regression propagator;
// errors holds the propagated standard error per frequency.
SpectrumGrid spectrum_from_trajectories(const SystemParams& p, const std::vector<double>& omegas,
                                        const TrajectorySpectrumOptions& opt);
SpectrumGrid spectrum_from_steady_state(const SystemParams& p, const std::vector<double>& omegas,
                                        const TrajectorySteadyState& ss);

namespace reference {

EnsembleSeries ensemble_density(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                std::uint64_t master_seed,
                                const std::vector<Observable>& observables = {Observable::rho_ee, Observable::re_chi1,
                                                                              Observable::im_chi1});

PhaseStatistics phase_statistics_ensemble(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                          std::uint64_t master_seed, double t_discard);

}  // namespace reference

}  // namespace noisyatom
