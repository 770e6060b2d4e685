#include <cmath>
#include <stdexcept>

#include "common/ordered_chunks.hpp"
#include "noisyatom/errors.hpp"
#include "traj/propagator.hpp"

namespace noisyatom {

namespace {

constexpr std::size_t kTrajectoriesPerChunk = 32;

// Mean vector and co-moment matrix of 3-vectors with pairwise merging.
struct Moments3 {
    std::size_t n = 0;
    std::array<double, 3> mean{};
    std::array<std::array<double, 3>, 3> m2{};

    void add(const std::array<double, 3>& x) {
        ++n;
        std::array<double, 3> d{};
        for (int i = 0; i < 3; ++i) {
            d[i] = x[i] - mean[i];
            mean[i] += d[i] / static_cast<double>(n);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m2[i][j] += d[i] * (x[j] - mean[j]);
    }

    void merge(const Moments3& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
        std::array<double, 3> d{};
        for (int i = 0; i < 3; ++i) d[i] = o.mean[i] - mean[i];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m2[i][j] += o.m2[i][j] + d[i] * d[j] * na * nb / nt;
        for (int i = 0; i < 3; ++i) mean[i] += d[i] * nb / nt;
        n += o.n;
    }
};

struct Resolved {
    double dt, t_discard, t_average;
};

Resolved resolve(const SystemParams& p, const TrajectorySpectrumOptions& opt) {
    if (!(p.gamma > 0.0)) throw std::invalid_argument("trajectory spectrum requires gamma > 0");
    if (opt.n_traj < 2) throw std::invalid_argument("trajectory spectrum needs n_traj >= 2");
    if (opt.stride == 0) throw std::invalid_argument("trajectory spectrum needs stride >= 1");
    Resolved r;
    r.dt = opt.dt > 0.0 ? opt.dt : max_step(p);
    r.t_discard = opt.t_discard >= 0.0 ? opt.t_discard : 10.0 / p.gamma;
    r.t_average = opt.t_average > 0.0 ? opt.t_average : 10.0 / p.gamma;
    return r;
}

SampleSchedule averaging_schedule(const Resolved& r, std::size_t stride) {
    const auto first = static_cast<std::size_t>(std::llround(r.t_discard / r.dt));
    const auto last = first + static_cast<std::size_t>(std::llround(r.t_average / r.dt));
    SampleSchedule s;
    s.dt = r.dt;
    s.sample_steps.push_back(0);
    for (std::size_t k = first; k <= last; k += stride)
        if (k > 0) s.sample_steps.push_back(k);
    if (s.sample_steps.size() < 2) throw std::invalid_argument("trajectory spectrum: empty averaging window");
    return s;
}

}  // namespace

TrajectorySteadyState estimate_steady_state(const SystemParams& p, const TrajectorySpectrumOptions& opt) {
    const Resolved r = resolve(p, opt);
    const SampleSchedule schedule = averaging_schedule(r, opt.stride);
    const detail::TrajectoryStepper stepper(p, schedule);

    Moments3 total;
    detail::ordered_chunks(
        opt.n_traj, kTrajectoriesPerChunk, total, [] { return Moments3{}; },
        [&](Moments3& local, std::size_t i) {
            std::array<double, 3> sum{};
            std::size_t count = 0;
            stepper.run(
                derive_seed(opt.seed, i),
                [&](std::size_t k, const AtomState& s) {
                    if (k == 0) return;
                    const cplx chi1 = s.amp_e * std::polar(1.0, -s.phi) * std::conj(s.amp_g);
                    sum[0] += chi1.real();
                    sum[1] += chi1.imag();
                    sum[2] += std::norm(s.amp_e);
                    ++count;
                },
                [](double, JumpKind) {});
            for (double& v : sum) v /= static_cast<double>(count);
            local.add(sum);
        },
        [](Moments3& acc, const Moments3& local) { acc.merge(local); });

    TrajectorySteadyState ss;
    ss.n_traj = total.n;
    ss.chi1 = cplx(total.mean[0], total.mean[1]);
    ss.chi4 = total.mean[2];
    const double denom = static_cast<double>(total.n) * static_cast<double>(total.n - 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ss.cov[i][j] = total.m2[i][j] / denom;
    return ss;
}

SpectrumGrid spectrum_from_steady_state(const SystemParams& p, const std::vector<double>& omegas,
                                        const TrajectorySteadyState& ss) {
    const RegressionPropagator prop(build_generators(p).n_double_primed, p.phase_noise);
    SpectrumGrid g;
    g.method = SpectrumMethod::trajectory;
    g.omegas = omegas;
    g.values.resize(omegas.size());
    g.errors.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const auto w = prop.weights(omegas[i], kRegressionPairing);
        g.values[i] = (w.coherence * ss.chi1 + w.excited * cplx(ss.chi4, 0.0)).real();
        const std::array<double, 3> grad{w.coherence.real(), -w.coherence.imag(), w.excited.real()};
        double var = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) var += grad[a] * ss.cov[a][b] * grad[b];
        g.errors[i] = std::sqrt(std::max(var, 0.0));
        if (w.pole_removed)
            g.elastic_weight += (w.elastic_coherence * ss.chi1 + w.elastic_excited * cplx(ss.chi4, 0.0)).real();
    }
    return g;
}

SpectrumGrid spectrum_from_trajectories(const SystemParams& p, const std::vector<double>& omegas,
                                        const TrajectorySpectrumOptions& opt) {
    return spectrum_from_steady_state(p, omegas, estimate_steady_state(p, opt));
}

}  // namespace noisyatom
