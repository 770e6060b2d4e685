#pragma once

#include <complex>

namespace noisyatom {

using cplx = std::complex<double>;

// Pure two-level state in the bare (lab) basis plus the current laser phase.
struct AtomState {
    cplx amp_g{1.0, 0.0};
    cplx amp_e{0.0, 0.0};
    double phi = 0.0;  // unwrapped laser phase
    double t = 0.0;

    double norm2() const { return std::norm(amp_g) + std::norm(amp_e); }
    void normalize();
};

// Averaged 2x2 state; rho_ge is conj(rho_eg) and never stored.
struct DensityMatrix {
    double rho_gg = 1.0;
    double rho_ee = 0.0;
    cplx rho_eg{0.0, 0.0};

    static DensityMatrix ground() { return {}; }
    static DensityMatrix from_state(const AtomState& s);

    double trace() const { return rho_gg + rho_ee; }
    cplx rho_ge() const { return std::conj(rho_eg); }

    // Unit trace, populations in [0, 1] and |rho_eg|^2 <= rho_gg rho_ee, all within tol.
    bool is_physical(double tol = 1e-10) const;
};

// 2 S^z with S^z = (|e><e| - |g><g|)/2 acting on the bare amplitudes.
AtomState apply_two_sz(const AtomState& s);

}  // namespace noisyatom
