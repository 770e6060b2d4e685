#pragma once

#include <vector>

#include "noisyatom/spectrum.hpp"

namespace noisyatom {

struct SpectrumFormulaParts {
    double omega_prime = 0.0;
    cplx p1, p2, p3, p4;
    cplx f;
};

// Evaluates the composite pieces at omega. Throws NumericalError("division-by-zero")
// when f hits its pole (omega = 0 with L = 0) and std::invalid_argument for gamma = 0.
SpectrumFormulaParts formula_parts(const SystemParams& p, double omega);

// Omega^2/(4 gamma Omega') (p1 p2 - gamma f p2 + Omega^2/2) / (p1 p2 p3 + Omega^2 p4),
// evaluated without simplification.
cplx gamma1_closed_form(const SystemParams& p, double omega);

// Closed form on a grid. At L = 0 the 1/(i omega) pole of f is split off analytically:
// its real weight goes to elastic_weight and omega = 0 holds the regular remainder.
SpectrumGrid spectrum_closed_form(const SystemParams& p, const std::vector<double>& omegas);

}  // namespace noisyatom
