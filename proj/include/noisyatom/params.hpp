#pragma once

namespace noisyatom {

// The five physical rates, all in rad/time. Construction validates them.
struct SystemParams {
    double rabi;         // Omega > 0
    double detuning;     // Delta = omega_a - omega_L
    double gamma;        // natural linewidth, >= 0
    double coll;         // collisional noise magnitude Gamma, >= 0
    double phase_noise;  // laser phase diffusion L, >= 0

    SystemParams(double rabi, double detuning, double gamma, double coll, double phase_noise);

    // Largest of Omega, gamma, Gamma, L and |Delta|.
    double max_rate() const;

    // Same physics with every rate multiplied by s.
    SystemParams scaled(double s) const;
};

// Upper bound on the integration step shared by the stochastic integrators:
// 1% of the fastest time scale.
double max_step(const SystemParams& p);

}  // namespace noisyatom
