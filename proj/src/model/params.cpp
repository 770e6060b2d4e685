#include "noisyatom/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace noisyatom {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SystemParams::SystemParams(double rabi_, double detuning_, double gamma_, double coll_,
                           double phase_noise_)
    : rabi(rabi_), detuning(detuning_), gamma(gamma_), coll(coll_), phase_noise(phase_noise_) {
    require(std::isfinite(rabi) && rabi > 0.0, "rabi frequency must be finite and > 0");
    require(std::isfinite(detuning), "detuning must be finite");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and >= 0");
    require(std::isfinite(coll) && coll >= 0.0, "collisional rate must be finite and >= 0");
    require(std::isfinite(phase_noise) && phase_noise >= 0.0,
            "phase-noise rate must be finite and >= 0");
}

double SystemParams::max_rate() const {
    return std::max({rabi, gamma, coll, phase_noise, std::abs(detuning), 1e-30});
}

SystemParams SystemParams::scaled(double s) const {
    return SystemParams(s * rabi, s * detuning, s * gamma, s * coll, s * phase_noise);
}

double max_step(const SystemParams& p) { return 0.01 / p.max_rate(); }

}  // namespace noisyatom
