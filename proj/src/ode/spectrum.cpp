#include "noisyatom/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "noisyatom/errors.hpp"

namespace noisyatom {

namespace {

using C = std::complex<double>;

const Vec4& left_trace() {
    static const Vec4 l = (Vec4() << 0.0, 0.0, 1.0, 1.0).finished();
    return l;
}

double spectral_value(const RegressionPropagator::Weights& w, const RegressionInputs& in,
                      double* elastic) {
    if (w.pole_removed && elastic) *elastic = (w.elastic_coherence * in.chi1 + w.elastic_excited * in.chi4).real();
    return (w.coherence * in.chi1 + w.excited * in.chi4).real();
}

SpectrumGrid make_grid(const std::vector<double>& omegas) {
    SpectrumGrid g;
    g.method = SpectrumMethod::resolvent;
    g.omegas = omegas;
    g.values.assign(omegas.size(), 0.0);
    return g;
}

}  // namespace

const char* to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::analytic: return "analytic";
        case SpectrumMethod::resolvent: return "resolvent";
        case SpectrumMethod::trajectory: return "trajectory";
    }
    return "unknown";
}

double SpectrumGrid::peak() const {
    if (values.empty()) return 0.0;
    return *std::max_element(values.begin(), values.end());
}

std::vector<double> SpectrumGrid::peak_normalized() const {
    const double p = peak();
    std::vector<double> out(values);
    if (p > 0.0)
        for (double& v : out) v /= p;
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw std::invalid_argument("uniform_grid: need hi > lo and >= 2 points");
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    // Put the centre exactly on zero for symmetric grids.
    if (lo == -hi && points % 2 == 1) g[points / 2] = 0.0;
    return g;
}

std::vector<double> default_grid(double rabi) { return uniform_grid(-10.0 * rabi, 10.0 * rabi, 2001); }

RegressionPropagator::RegressionPropagator(const Mat4& npp, double phase_noise)
    : npp_(npp), phase_noise_(phase_noise) {
    // Right eigenvector for eigenvalue -L, normalized against (0, 0, 1, 1).
    Mat4 a = npp_ + Mat4::Identity() * C(phase_noise_, 0.0);
    a.row(3) = left_trace().transpose();
    Vec4 rhs = Vec4::Zero();
    rhs(3) = 1.0;
    const Eigen::FullPivLU<Mat4> lu(a);
    if (lu.rank() < 4)
        throw NumericalError("singular-resolvent", "trace mode of the regression generator is degenerate");
    right_ = lu.solve(rhs);
    proj_ = right_ * left_trace().transpose();
    kappa_ = std::max(1.0, npp_.cwiseAbs().maxCoeff());
}

RegressionPropagator::Weights RegressionPropagator::weights(double omega, const Pairing& pairing) const {
    const C iw(0.0, omega);
    Mat4 a = -npp_ + proj_ * C(kappa_, 0.0);
    a.diagonal().array() += iw;

    const Eigen::PartialPivLU<Mat4> lu(a);
    if (!(lu.rcond() > 1e-14))
        throw NumericalError("singular-resolvent", "i omega - N'' is numerically singular");

    const Mat4 complement = Mat4::Identity() - proj_;
    const C pole_den = iw + phase_noise_;
    Weights w;
    w.pole_removed = pole_den == C(0.0, 0.0);

    auto column = [&](int c, C& regular_plus_pole, C& elastic) {
        const Vec4 x = lu.solve(complement.col(c));
        const C residue = right_(1) * left_trace()(c);
        regular_plus_pole = x(1);
        if (w.pole_removed)
            elastic = residue;
        else
            regular_plus_pole += residue / pole_den;
    };
    column(pairing.coherence_col, w.coherence, w.elastic_coherence);
    column(pairing.excited_col, w.excited, w.elastic_excited);
    return w;
}

RegressionInputs regression_inputs(const SystemParams& p) {
    const ChiBlock ss = steady_state(p);
    RegressionInputs in;
    in.n_double_primed = build_generators(p).n_double_primed;
    in.phase_noise = p.phase_noise;
    in.chi1 = ss.vec(0);
    in.chi4 = ss.vec(3);
    return in;
}

SpectrumGrid spectrum_resolvent(const SystemParams& p, const std::vector<double>& omegas,
                                const Pairing& pairing) {
    return spectrum_resolvent(regression_inputs(p), omegas, pairing);
}

SpectrumGrid spectrum_resolvent(const RegressionInputs& in, const std::vector<double>& omegas,
                                const Pairing& pairing) {
    const RegressionPropagator prop(in.n_double_primed, in.phase_noise);
    SpectrumGrid g = make_grid(omegas);
    const auto n = static_cast<std::ptrdiff_t>(omegas.size());
    double elastic = 0.0;
    bool failed = false;
    std::string failure;

#pragma omp parallel for schedule(static) reduction(+ : elastic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const auto w = prop.weights(omegas[static_cast<std::size_t>(i)], pairing);
            double e = 0.0;
            g.values[static_cast<std::size_t>(i)] = spectral_value(w, in, &e);
            elastic += e;
        } catch (const NumericalError& err) {
#pragma omp critical(noisyatom_spectrum_error)
            {
                failed = true;
                failure = err.what();
            }
        }
    }
    if (failed) throw NumericalError("singular-resolvent", failure);
    g.elastic_weight = elastic;
    return g;
}

namespace reference {

SpectrumGrid spectrum_resolvent(const RegressionInputs& in, const std::vector<double>& omegas,
                                const Pairing& pairing) {
    const RegressionPropagator prop(in.n_double_primed, in.phase_noise);
    SpectrumGrid g = make_grid(omegas);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        double e = 0.0;
        g.values[i] = spectral_value(prop.weights(omegas[i], pairing), in, &e);
        g.elastic_weight += e;
    }
    return g;
}

}  // namespace reference

}  // namespace noisyatom
