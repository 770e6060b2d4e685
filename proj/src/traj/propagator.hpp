#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "common/small_angle.hpp"
#include "noisyatom/noise.hpp"
#include "noisyatom/trajectory.hpp"

namespace noisyatom::detail {

// Amplitudes are held in the laser frame, u_g = amp_g and u_e = e^{-i phi} amp_e,
// where the coherent generator is constant and its propagator is exact.
class TrajectoryStepper {
public:
    TrajectoryStepper(const SystemParams& p, const SampleSchedule& schedule);

    const SampleSchedule& schedule() const { return schedule_; }

    // on_sample(index, state) with the normalized lab-frame state; on_jump(t, kind).
    template <class OnSample, class OnJump>
    void run(std::uint64_t seed, OnSample&& on_sample, OnJump&& on_jump) const {
        using C = std::complex<double>;
        NoiseSource noise(seed, p_.coll, p_.phase_noise);
        std::mt19937_64& jump_rng = noise.jump_engine();
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::exponential_distribution<double> flip_wait(flip_rate_ > 0.0 ? flip_rate_ : 1.0);

        // Unnormalized amplitudes: the no-jump norm decays as exp(-2 gamma int |u_e|^2),
        // and an emission happens when it falls below a uniform threshold.
        C ug(1.0, 0.0), ue(0.0, 0.0);
        double phi = 0.0;
        double threshold = uniform(jump_rng);
        const double dt = schedule_.dt;
        const std::size_t n = schedule_.n_steps();
        const bool collisions = flip_rate_ > 0.0;
        const bool diffusion = p_.phase_noise > 0.0;

        double t_now = 0.0;
        double noise_clock = 0.0;
        double next_flip = collisions ? flip_wait(jump_rng) : 0.0;
        auto noise_kick = [&](double h) {
            if (diffusion) {
                const double dp = noise.phase(h);
                phi += dp;
                const auto [cs, sn] = cos_sin(dp);
                ue *= C(cs, -sn);
            }
            noise_clock += h;
            if (!collisions) return;
            bool odd = false;
            while (next_flip <= noise_clock) {
                odd = !odd;
                next_flip += flip_wait(jump_rng);
            }
            if (odd) {
                ug = -ug;
                on_jump(t_now, JumpKind::collision);
            }
        };
        auto emit = [&](std::size_t idx) {
            const double inv = 1.0 / std::sqrt(std::norm(ug) + std::norm(ue));
            AtomState s;
            s.amp_g = ug * inv;
            s.amp_e = ue * inv * std::polar(1.0, phi);
            s.phi = phi;
            s.t = t_now;
            on_sample(idx, s);
        };

        std::size_t next = 0;
        emit(next++);
        noise_kick(0.5 * dt);
        for (std::size_t k = 1; k <= n; ++k) {
            t_now = static_cast<double>(k) * dt;
            const C g = e00_ * ug + e01_ * ue;
            const C e = e10_ * ug + e11_ * ue;
            ug = g;
            ue = e;
            if (std::norm(ug) + std::norm(ue) < threshold) {
                ug = ue / std::abs(ue);
                ue = C(0.0, 0.0);
                threshold = uniform(jump_rng);
                on_jump(t_now, JumpKind::spontaneous);
            }
            if (k == schedule_.sample_steps[next]) {
                noise_kick(0.5 * dt);
                emit(next++);
                if (k < n) noise_kick(0.5 * dt);
            } else {
                noise_kick(dt);
            }
        }
    }

private:
    SystemParams p_;
    SampleSchedule schedule_;
    std::complex<double> e00_, e01_, e10_, e11_;
    double flip_rate_ = 0.0;
};

}  // namespace noisyatom::detail
