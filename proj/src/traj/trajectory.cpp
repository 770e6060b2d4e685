#include <stdexcept>

#include "common/ordered_chunks.hpp"
#include "traj/propagator.hpp"

namespace noisyatom {

namespace {

constexpr std::size_t kTrajectoriesPerChunk = 64;

double observable_value(Observable o, const AtomState& s) {
    switch (o) {
        case Observable::rho_ee: return std::norm(s.amp_e);
        case Observable::rho_gg: return std::norm(s.amp_g);
        case Observable::re_rho_eg: return (s.amp_e * std::conj(s.amp_g)).real();
        case Observable::im_rho_eg: return (s.amp_e * std::conj(s.amp_g)).imag();
        case Observable::re_chi1: return (s.amp_e * std::polar(1.0, -s.phi) * std::conj(s.amp_g)).real();
        case Observable::im_chi1: return (s.amp_e * std::polar(1.0, -s.phi) * std::conj(s.amp_g)).imag();
        case Observable::trace: return s.norm2();
        case Observable::re_coll_factor:
        case Observable::im_coll_factor: break;
    }
    throw std::invalid_argument(std::string("observable not available from trajectories: ") + to_string(o));
}

void check_observables(const std::vector<Observable>& obs) {
    const AtomState probe;
    for (Observable o : obs) (void)observable_value(o, probe);
}

void accumulate_trajectory(const detail::TrajectoryStepper& stepper, std::uint64_t seed, EnsembleSeries& acc) {
    stepper.run(
        seed,
        [&](std::size_t k, const AtomState& s) {
            for (std::size_t o = 0; o < acc.observables.size(); ++o)
                acc.stats[o][k].add(observable_value(acc.observables[o], s));
        },
        [](double, JumpKind) {});
    ++acc.n_members;
}

void check_count(std::size_t n_traj) {
    if (n_traj < 100) throw std::invalid_argument("ensemble_density: n_traj must be >= 100");
}

}  // namespace

const char* to_string(JumpKind k) { return k == JumpKind::collision ? "collision" : "spontaneous"; }

TrajectoryRecord run_trajectory(const SystemParams& p, std::uint64_t seed, const SampleSchedule& schedule) {
    const detail::TrajectoryStepper stepper(p, schedule);
    const double theta = mixing_angle(p);
    TrajectoryRecord rec;
    const std::size_t n = schedule.sample_steps.size();
    rec.times = schedule.times();
    rec.states.reserve(n);
    rec.phase_obs.reserve(n);
    PhaseSumUnwrapper unwrap;
    stepper.run(
        seed,
        [&](std::size_t, const AtomState& s) {
            rec.states.push_back(s);
            const DressedDecomposition d = to_dressed(s, theta);
            PhaseObservation ob;
            ob.valid = d.valid();
            if (ob.valid) {
                ob.dphi = d.dphi();
                ob.sphi = unwrap.push(d.sphi());
            }
            rec.phase_obs.push_back(ob);
        },
        [&](double t, JumpKind kind) { rec.jumps.push_back({t, kind}); });
    return rec;
}

TrajectoryRecord run_trajectory(const SystemParams& p, std::uint64_t seed, double t_end, double dt,
                                std::size_t stride) {
    return run_trajectory(p, seed, SampleSchedule::uniform(dt, t_end, stride));
}

EnsembleSeries ensemble_density(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                std::uint64_t master_seed, const std::vector<Observable>& observables) {
    check_count(n_traj);
    check_observables(observables);
    const detail::TrajectoryStepper stepper(p, schedule);
    const std::vector<double> times = schedule.times();
    EnsembleSeries total = EnsembleSeries::shaped(times, observables);
    detail::ordered_chunks(
        n_traj, kTrajectoriesPerChunk, total, [&] { return EnsembleSeries::shaped(times, observables); },
        [&](EnsembleSeries& local, std::size_t i) {
            accumulate_trajectory(stepper, derive_seed(master_seed, i), local);
        },
        [](EnsembleSeries& acc, const EnsembleSeries& local) { acc.merge(local); });
    return total;
}

namespace reference {

EnsembleSeries ensemble_density(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                std::uint64_t master_seed, const std::vector<Observable>& observables) {
    check_count(n_traj);
    check_observables(observables);
    const detail::TrajectoryStepper stepper(p, schedule);
    EnsembleSeries total = EnsembleSeries::shaped(schedule.times(), observables);
    for (std::size_t i = 0; i < n_traj; ++i) accumulate_trajectory(stepper, derive_seed(master_seed, i), total);
    return total;
}

}  // namespace reference

}  // namespace noisyatom
