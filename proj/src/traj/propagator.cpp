#include "traj/propagator.hpp"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace noisyatom::detail {

TrajectoryStepper::TrajectoryStepper(const SystemParams& p, const SampleSchedule& schedule)
    : p_(p), schedule_(schedule) {
    const double dt = schedule.dt;
    if (!(dt > 0.0) || dt > max_step(p) * (1.0 + 1e-9))
        throw std::invalid_argument("run_trajectory: dt exceeds 0.01 / max rate");
    if (schedule.sample_steps.empty() || schedule.sample_steps.front() != 0 || schedule.n_steps() == 0)
        throw std::invalid_argument("run_trajectory: schedule must start at step 0 and have t_end > 0");

    // Dephasing events at rate Gamma/2; an odd count flips the sign of u_g.
    flip_rate_ = 0.5 * p.coll;
    const double flip_probability = 0.5 * -std::expm1(-p.coll * dt);
    if (flip_probability + 2.0 * p.gamma * dt > 0.1)
        throw std::invalid_argument("run_trajectory: jump probability per step exceeds 0.1");

    using C = std::complex<double>;
    const C i(0.0, 1.0);
    Eigen::Matrix2cd a;
    a << -0.5 * i * p.detuning, 0.5 * i * p.rabi,
         0.5 * i * p.rabi, 0.5 * i * p.detuning - p.gamma;
    const Eigen::Matrix2cd e = (a * C(dt, 0.0)).exp();
    e00_ = e(0, 0);
    e01_ = e(0, 1);
    e10_ = e(1, 0);
    e11_ = e(1, 1);
}

}  // namespace noisyatom::detail
