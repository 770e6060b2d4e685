#include "noisyatom/dressed.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace noisyatom {

namespace {

constexpr double kPi = std::numbers::pi;

struct Basis {
    double c, s;  // cos(Theta), sin(Theta)
};

Basis basis(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

double mixing_angle(const SystemParams& p) {
    if (p.detuning == 0.0) return kPi / 4.0;
    return -0.5 * std::atan(p.rabi / p.detuning);
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

double DressedDecomposition::dphi() const { return wrap_angle(phi1 - phi2); }

DressedDecomposition to_dressed(const AtomState& s, const SystemParams& p) {
    return to_dressed(s, mixing_angle(p));
}

DressedDecomposition to_dressed(const AtomState& s, double theta) {
    const Basis b = basis(theta);
    const cplx ug = s.amp_g;
    const cplx ue = s.amp_e * std::polar(1.0, -s.phi);
    const cplx d1 = b.c * ug + b.s * ue;
    const cplx d2 = -b.s * ug + b.c * ue;

    DressedDecomposition d;
    d.theta = theta;
    d.c1 = std::abs(d1);
    d.c2 = std::abs(d2);
    d.phi1_defined = d.c1 != 0.0;
    d.phi2_defined = d.c2 != 0.0;
    d.phi1 = d.phi1_defined ? std::arg(d1) : 0.0;
    d.phi2 = d.phi2_defined ? std::arg(d2) : 0.0;
    return d;
}

AtomState reconstruct(const DressedDecomposition& d, double phi, double t) {
    const Basis b = basis(d.theta);
    const cplx d1 = std::polar(d.c1, d.phi1);
    const cplx d2 = std::polar(d.c2, d.phi2);
    AtomState s;
    s.amp_g = b.c * d1 - b.s * d2;
    s.amp_e = (b.s * d1 + b.c * d2) * std::polar(1.0, phi);
    s.phi = phi;
    s.t = t;
    return s;
}

double PhaseSumUnwrapper::push(double raw) {
    if (!started_) {
        started_ = true;
        unwrapped_ = raw;
    } else {
        unwrapped_ += wrap_angle(raw - last_raw_);
    }
    last_raw_ = raw;
    return unwrapped_;
}

SwapCheck collisional_swap_check(const SystemParams& p, double tol) {
    SwapCheck out;
    if (p.detuning != 0.0) {
        std::ostringstream os;
        os << "2S^z exchanges the dressed states only at resonance; detuning = " << p.detuning;
        out.diagnostic = os.str();
        return out;
    }
    const Basis b = basis(mixing_angle(p));
    // (g, e) components; 2S^z = diag(-1, +1).
    const double one_g = b.c, one_e = b.s;
    const double two_g = -b.s, two_e = b.c;
    const double err12 = std::hypot(-one_g - two_g, one_e - two_e);
    const double err21 = std::hypot(-two_g - one_g, two_e - one_e);
    out.ok = err12 <= tol && err21 <= tol;
    std::ostringstream os;
    os << "|2S^z|1> - |2>| = " << err12 << ", |2S^z|2> - |1>| = " << err21;
    out.diagnostic = os.str();
    return out;
}

}  // namespace noisyatom
