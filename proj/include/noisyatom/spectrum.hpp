#pragma once

#include <string>
#include <vector>

#include "noisyatom/chi_block.hpp"

namespace noisyatom {

enum class SpectrumMethod { analytic, resolvent, trajectory };

const char* to_string(SpectrumMethod m);

struct SpectrumGrid {
    std::vector<double> omegas;  // relative to the laser frequency
    std::vector<double> values;  // S(omega) = Re Gamma1(omega)
    std::vector<double> errors;  // one standard error per point; empty unless estimated
    SpectrumMethod method = SpectrumMethod::resolvent;
    // Without laser phase noise the coherent part of the emission is a line
    // pi * c * delta(omega). Its weight c is reported here and the value at
    // omega = 0 holds only the regular remainder.
    double elastic_weight = 0.0;

    double peak() const;
    std::vector<double> peak_normalized() const;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

// 2001 points over [-10, 10] in units of the Rabi frequency.
std::vector<double> default_grid(double rabi = 1.0);

// Which column of the regression propagator each stationary average multiplies.
// Columns are 0-based indices into the double-primed basis.
struct Pairing {
    int coherence_col;  // multiplies <chi'1>
    int excited_col;    // multiplies <chi'4>
    const char* name;
};

// S^- rho has ground-row element rho_eg (third slot) and excited-row element rho_ee (second slot).
inline constexpr Pairing kRegressionPairing{2, 1, "regression"};
// Coherence paired with the fourth column; reproduces the closed-form expression.
inline constexpr Pairing kColumnFourPairing{3, 1, "column-four"};
// <chi'1> on [R]_22 and <chi'4> on [R]_24.
inline constexpr Pairing kLiteralPairing{1, 3, "literal"};

// Row 2 of (i omega - N'')^{-1}, split into the pole at -L (left eigenvector
// (0, 0, 1, 1)) and a regular remainder that stays finite at omega = 0 when L = 0.
class RegressionPropagator {
public:
    RegressionPropagator(const Mat4& n_double_primed, double phase_noise);

    struct Weights {
        cplx coherence;           // Gamma1 = coherence * <chi'1> + excited * <chi'4>
        cplx excited;
        bool pole_removed = false;
        cplx elastic_coherence;   // weight of the removed 1/(i omega) pole
        cplx elastic_excited;
    };

    Weights weights(double omega, const Pairing& pairing) const;

private:
    Mat4 npp_;
    Mat4 proj_;
    Vec4 right_;
    double phase_noise_;
    double kappa_;
};

struct RegressionInputs {
    Mat4 n_double_primed;
    double phase_noise = 0.0;
    cplx chi1;  // stationary <chi'1>
    cplx chi4;  // stationary <chi'4>
};

RegressionInputs regression_inputs(const SystemParams& p);

SpectrumGrid spectrum_resolvent(const SystemParams& p, const std::vector<double>& omegas,
                                const Pairing& pairing = kRegressionPairing);
SpectrumGrid spectrum_resolvent(const RegressionInputs& in, const std::vector<double>& omegas,
                                const Pairing& pairing = kRegressionPairing);

namespace reference {

// Single-threaded version of spectrum_resolvent kept as a test and benchmark baseline.
SpectrumGrid spectrum_resolvent(const RegressionInputs& in, const std::vector<double>& omegas,
                                const Pairing& pairing = kRegressionPairing);

}  // namespace reference

}  // namespace noisyatom
