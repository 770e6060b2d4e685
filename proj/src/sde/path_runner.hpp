#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "common/small_angle.hpp"
#include "noisyatom/sde.hpp"

namespace noisyatom::detail {

// Drive and decay in the frame of the laser phase, state (rho_gg, rho_ee, Re c, Im c)
// with c = rho_eg e^{-i phi}. The system is linear with constant coefficients
// while phi is frozen, so one Runge-Kutta step is the degree-4 Taylor polynomial
// of the generator, precomputed once.
class SbeStepper {
public:
    SbeStepper(const SystemParams& p, const SampleSchedule& schedule, const DensityMatrix& rho0)
        : p_(p), schedule_(schedule), rho0_(rho0) {
        if (!rho0.is_physical()) throw std::invalid_argument("integrate_sbe: rho0 is not a physical state");
        if (!(schedule.dt > 0.0) || schedule.dt > max_step(p) * (1.0 + 1e-9))
            throw std::invalid_argument("integrate_sbe: dt exceeds 0.01 / max rate");
        if (schedule.sample_steps.empty() || schedule.sample_steps.front() != 0)
            throw std::invalid_argument("integrate_sbe: schedule must start at step 0");
        build_map();
    }

    template <class OnSample>
    void run(std::uint64_t seed, OnSample&& on_sample) const {
        NoiseSource noise(seed, p_.coll, p_.phase_noise);
        double y[4] = {rho0_.rho_gg, rho0_.rho_ee, rho0_.rho_eg.real(), rho0_.rho_eg.imag()};
        double phi = 0.0, w = 0.0;
        const double dt = schedule_.dt;
        const std::size_t n = schedule_.n_steps();

        auto kick = [&](double h) {
            const double dw = noise.coll(h);
            const double dp = noise.phase(h);
            w += dw;
            phi += dp;
            const double a = dw - dp;
            if (a != 0.0) {
                const auto [cs, sn] = cos_sin(a);
                const double re = y[2] * cs - y[3] * sn;
                y[3] = y[2] * sn + y[3] * cs;
                y[2] = re;
            }
        };
        auto emit = [&](std::size_t idx, std::size_t step) {
            SbeSample s;
            s.t = static_cast<double>(step) * dt;
            s.rho.rho_gg = y[0];
            s.rho.rho_ee = y[1];
            s.rho.rho_eg = std::complex<double>(y[2], y[3]) * std::polar(1.0, phi);
            s.phi = phi;
            s.coll_phase = w;
            on_sample(idx, s);
        };

        std::size_t next = 0;
        emit(next++, 0);
        kick(0.5 * dt);
        for (std::size_t k = 1; k <= n; ++k) {
            double z[4];
            for (int i = 0; i < 4; ++i) z[i] = t_[i][0] * y[0] + t_[i][1] * y[1] + t_[i][2] * y[2] + t_[i][3] * y[3];
            for (int i = 0; i < 4; ++i) y[i] = z[i];
            if (k == schedule_.sample_steps[next]) {
                kick(0.5 * dt);
                emit(next++, k);
                if (k < n) kick(0.5 * dt);
            } else {
                kick(dt);
            }
        }
    }

private:
    void build_map() {
        const double O = p_.rabi, D = p_.detuning, g = p_.gamma, h = schedule_.dt;
        const std::array<std::array<double, 4>, 4> a{{
            {0.0, 2.0 * g, 0.0, -O},
            {0.0, -2.0 * g, 0.0, O},
            {0.0, 0.0, -g, -D},
            {0.5 * O, -0.5 * O, D, -g},
        }};
        // t = I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24, by Horner.
        std::array<std::array<double, 4>, 4> acc{};
        for (int i = 0; i < 4; ++i) acc[i][i] = 1.0;
        for (int order = 4; order >= 1; --order) {
            std::array<std::array<double, 4>, 4> next{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < 4; ++k) s += a[i][k] * acc[k][j];
                    next[i][j] = (i == j ? 1.0 : 0.0) + s * h / order;
                }
            acc = next;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t_[i][j] = acc[i][j];
    }

    SystemParams p_;
    SampleSchedule schedule_;
    DensityMatrix rho0_;
    double t_[4][4]{};
};

double observable_value(Observable o, const SbeSample& s);

}  // namespace noisyatom::detail
