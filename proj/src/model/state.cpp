#include "noisyatom/state.hpp"

#include <cmath>
#include <stdexcept>

namespace noisyatom {

void AtomState::normalize() {
    const double n = std::sqrt(norm2());
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a null state");
    amp_g /= n;
    amp_e /= n;
}

DensityMatrix DensityMatrix::from_state(const AtomState& s) {
    DensityMatrix d;
    d.rho_gg = std::norm(s.amp_g);
    d.rho_ee = std::norm(s.amp_e);
    d.rho_eg = s.amp_e * std::conj(s.amp_g);
    return d;
}

bool DensityMatrix::is_physical(double tol) const {
    if (!std::isfinite(rho_gg) || !std::isfinite(rho_ee) || !std::isfinite(rho_eg.real()) ||
        !std::isfinite(rho_eg.imag()))
        return false;
    if (std::abs(trace() - 1.0) > tol) return false;
    if (rho_ee < -tol || rho_ee > 1.0 + tol || rho_gg < -tol || rho_gg > 1.0 + tol) return false;
    return std::norm(rho_eg) <= rho_gg * rho_ee + tol;
}

AtomState apply_two_sz(const AtomState& s) {
    AtomState out = s;
    out.amp_g = -s.amp_g;
    return out;
}

}  // namespace noisyatom
