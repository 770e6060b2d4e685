#include "noisyatom/closed_form.hpp"

#include <cmath>
#include <stdexcept>

#include "noisyatom/errors.hpp"

namespace noisyatom {

namespace {

using C = std::complex<double>;
constexpr C I{0.0, 1.0};

void require_gamma(const SystemParams& p) {
    if (!(p.gamma > 0.0)) throw std::invalid_argument("closed-form spectrum requires gamma > 0");
}

double omega_prime(const SystemParams& p) {
    const double s = p.coll + p.phase_noise + p.gamma;
    return p.detuning * p.detuning / s + s + p.rabi * p.rabi / (2.0 * p.gamma);
}

struct Polys {
    C p1, p2, p3, p4;
};

Polys polys(const SystemParams& p, double omega) {
    const C iw = I * omega;
    const double D = p.detuning, L = p.phase_noise, G = p.coll, g = p.gamma;
    return {iw + L + 2.0 * g, iw - I * D + 4.0 * L + G + g, iw + I * D + g + G, iw + 2.0 * L + G + g};
}

C denominator(const SystemParams& p, const Polys& q) {
    return q.p1 * q.p2 * q.p3 + p.rabi * p.rabi * q.p4;
}

void require_nonzero(C d) {
    if (d == C(0.0, 0.0) || !std::isfinite(std::abs(d)))
        throw NumericalError("division-by-zero", "closed-form denominator vanishes");
}

// Value at omega = 0 when L = 0, with the 1/(i omega) part of f removed.
// g(w) = p2/D; the pole term is K 2 gamma^2 f0 g(w)/(i w) and its regular
// remainder at 0 is K 2 gamma^2 f0 g'(0)/i.
struct SplitAtPole {
    C regular;
    C residue;  // K 2 gamma^2 f0 g(0)
};

SplitAtPole split_at_pole(const SystemParams& p) {
    const Polys q = polys(p, 0.0);
    const C d = denominator(p, q);
    require_nonzero(d);
    const double g = p.gamma;
    const double k = p.rabi * p.rabi / (4.0 * g * omega_prime(p));
    const C f0 = 1.0 + I * p.detuning / (p.coll + p.phase_noise + g);

    const C smooth = k * (q.p1 * q.p2 - g * f0 * q.p2 + 0.5 * p.rabi * p.rabi) / d;
    // d/d(i w) of D, all p' = 1 in that variable.
    const C dd = q.p2 * q.p3 + q.p1 * q.p3 + q.p1 * q.p2 + p.rabi * p.rabi;
    const C g_prime_over_i = (d - q.p2 * dd) / (d * d);
    SplitAtPole out;
    out.regular = smooth + k * 2.0 * g * g * f0 * g_prime_over_i;
    out.residue = k * 2.0 * g * g * f0 * q.p2 / d;
    return out;
}

}  // namespace

SpectrumFormulaParts formula_parts(const SystemParams& p, double omega) {
    require_gamma(p);
    const Polys q = polys(p, omega);
    const C pole = I * omega + p.phase_noise;
    if (pole == C(0.0, 0.0)) throw NumericalError("division-by-zero", "f(omega) has a pole at omega = 0 when L = 0");
    SpectrumFormulaParts out;
    out.omega_prime = omega_prime(p);
    out.p1 = q.p1;
    out.p2 = q.p2;
    out.p3 = q.p3;
    out.p4 = q.p4;
    out.f = (1.0 + I * p.detuning / (p.coll + p.phase_noise + p.gamma)) * (1.0 - 2.0 * p.gamma / pole);
    return out;
}

cplx gamma1_closed_form(const SystemParams& p, double omega) {
    const SpectrumFormulaParts s = formula_parts(p, omega);
    const double O2 = p.rabi * p.rabi;
    const C den = s.p1 * s.p2 * s.p3 + O2 * s.p4;
    require_nonzero(den);
    return O2 / (4.0 * p.gamma * s.omega_prime) * (s.p1 * s.p2 - p.gamma * s.f * s.p2 + 0.5 * O2) / den;
}

SpectrumGrid spectrum_closed_form(const SystemParams& p, const std::vector<double>& omegas) {
    require_gamma(p);
    SpectrumGrid g;
    g.method = SpectrumMethod::analytic;
    g.omegas = omegas;
    g.values.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (omegas[i] == 0.0 && p.phase_noise == 0.0) {
            const SplitAtPole s = split_at_pole(p);
            if (std::abs(s.residue.imag()) > 1e-12 * std::abs(s.residue))
                throw NumericalError("division-by-zero",
                                     "closed form has a dispersive 1/omega term at omega = 0");
            g.values[i] = s.regular.real();
            g.elastic_weight += s.residue.real();
            continue;
        }
        g.values[i] = gamma1_closed_form(p, omegas[i]).real();
    }
    return g;
}

}  // namespace noisyatom
