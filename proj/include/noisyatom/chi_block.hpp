#pragma once

#include "noisyatom/generators.hpp"
#include "noisyatom/state.hpp"

namespace noisyatom {

struct ChiBlock {
    ChiKind kind = ChiKind::primed;
    Vec4 vec = Vec4::Zero();
    Mat4 gen = Mat4::Zero();

    // Physical density matrix; valid for the primed kind, where the laser
    // phase dressing of the coherence is e^{-i phi}.
    DensityMatrix density() const;
};

// Block at t = 0 with phi(0) = 0, so every kind starts from (rho_eg, rho_ge, rho_gg, rho_ee).
ChiBlock make_block(ChiKind kind, const SystemParams& p, const DensityMatrix& rho0);

// Stationary primed averages: N' x = 0 with the last row replaced by x3 + x4 = 1.
// Throws NumericalError("no-unique-steady-state") when that system is singular.
ChiBlock steady_state(const SystemParams& p);

// exp(gen t) vec. Rejects negative or non-finite t.
ChiBlock evolve(const ChiBlock& block, double t);

}  // namespace noisyatom
