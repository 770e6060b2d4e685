#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "noisyatom/chi_block.hpp"
#include "noisyatom/errors.hpp"
#include "noisyatom/trajectory.hpp"

using namespace noisyatom;
using std::numbers::pi;

TEST_CASE("spontaneous emission leaves the atom in the ground state") {
    const SystemParams p(1.0, 0.0, 0.5, 0.0, 0.3);
    const TrajectoryRecord r = run_trajectory(p, 17, 200.0, max_step(p), 1);
    std::size_t checked = 0;
    for (const Jump& j : r.jumps) {
        if (j.kind != JumpKind::spontaneous) continue;
        const auto k = static_cast<std::size_t>(std::lround(j.t / max_step(p)));
        CHECK(r.states[k].amp_e == cplx(0.0, 0.0));
        CHECK(std::abs(r.states[k].amp_g) == doctest::Approx(1.0));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("states stay normalized") {
    const SystemParams p(1.0, 0.2, 0.05, 5.0, 0.5);
    const TrajectoryRecord r = run_trajectory(p, 3, 50.0, max_step(p), 10);
    for (const auto& s : r.states) CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("collisions flip dphi and keep sphi at resonance") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.0);
    const TrajectoryRecord r = run_trajectory(p, 8, 100.0, max_step(p), 1);
    // Without phase noise the phase sum only changes at spontaneous emissions.
    std::size_t next = 0;
    for (std::size_t i = 1; i < r.times.size(); ++i) {
        bool emission = false;
        while (next < r.jumps.size() && r.jumps[next].t <= r.times[i])
            emission = emission || r.jumps[next++].kind == JumpKind::spontaneous;
        if (!emission) CHECK(std::abs(r.phase_obs[i].sphi - r.phase_obs[i - 1].sphi) < 1e-9);
    }
}

TEST_CASE("jump rates match the averaged dynamics") {
    const SystemParams p(1.0, 0.0, 0.1, 2.0, 0.0);
    const double rho_ee = steady_state(p).density().rho_ee;
    const double t_end = 20000.0;
    const TrajectoryRecord r = run_trajectory(p, 99, t_end, max_step(p), 100000);
    double emissions = 0, collisions = 0;
    for (const Jump& j : r.jumps) (j.kind == JumpKind::spontaneous ? emissions : collisions) += 1.0;
    const double expect_em = 2.0 * p.gamma * rho_ee * t_end;
    CHECK(emissions == doctest::Approx(expect_em).epsilon(5.0 / std::sqrt(expect_em)));
    // one recorded flip per step with odd parity
    const double dt = max_step(p);
    const double expect_flip = 0.5 * (1.0 - std::exp(-p.coll * dt)) * t_end / dt;
    CHECK(collisions == doctest::Approx(expect_flip).epsilon(5.0 / std::sqrt(expect_flip)));
}

TEST_CASE("trajectory average reproduces the averaged equations") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.5);
    const SampleSchedule sched = SampleSchedule::at_times(max_step(p), {2.0, 5.0, 10.0});
    const EnsembleSeries s = ensemble_density(p, 2000, sched, 31);
    const ChiBlock b0 = make_block(ChiKind::primed, p, DensityMatrix::ground());
    for (std::size_t k = 1; k < s.times.size(); ++k) {
        const ChiBlock b = evolve(b0, s.times[k]);
        CHECK(std::abs(s.mean(Observable::rho_ee, k) - b.vec(3).real()) <= 4.0 * s.stderr_mean(Observable::rho_ee, k));
        CHECK(std::abs(s.mean(Observable::re_chi1, k) - b.vec(0).real()) <= 4.0 * s.stderr_mean(Observable::re_chi1, k));
        CHECK(std::abs(s.mean(Observable::im_chi1, k) - b.vec(0).imag()) <= 4.0 * s.stderr_mean(Observable::im_chi1, k));
    }
}

TEST_CASE("ensemble needs at least 100 trajectories and matches its serial reference") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const SampleSchedule sched = SampleSchedule::uniform(max_step(p), 2.0, 100);
    CHECK_THROWS(ensemble_density(p, 99, sched, 1));
    const EnsembleSeries a = ensemble_density(p, 150, sched, 1);
    const EnsembleSeries b = reference::ensemble_density(p, 150, sched, 1);
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        CHECK(a.mean(Observable::rho_ee, k) == doctest::Approx(b.mean(Observable::rho_ee, k)).epsilon(1e-12));
        CHECK(a.stderr_mean(Observable::im_chi1, k) ==
              doctest::Approx(b.stderr_mean(Observable::im_chi1, k)).epsilon(1e-9));
    }
}

TEST_CASE("histogram binning covers (-pi, pi]") {
    CHECK(PhaseHistogram::bin_of(-pi + 1e-12) == 0);
    CHECK(PhaseHistogram::bin_of(pi) == PhaseHistogram::kBins - 1);
    // bins are (a, b]: zero closes bin 31
    CHECK(PhaseHistogram::bin_of(0.0) == PhaseHistogram::kBins / 2 - 1);
    CHECK(PhaseHistogram::bin_of(1e-9) == PhaseHistogram::kBins / 2);
    CHECK(PhaseHistogram::bin_center(0) == doctest::Approx(-pi + pi / 64));
    PhaseHistogram h;
    CHECK(std::isinf(h.max_min_ratio()));
    for (int k = 0; k < PhaseHistogram::kBins; ++k)
        for (int j = 0; j <= (k == 10 ? 2 : 1); ++j) h.add(PhaseHistogram::bin_center(k));
    CHECK(h.max_min_ratio() == doctest::Approx(1.5));
    CHECK(h.argmax() == 10);
    CHECK(structureless(h));
}

TEST_CASE("mode predicates on synthetic histograms") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n01;
    PhaseHistogram two, one;
    for (int i = 0; i < 200000; ++i) {
        const double x = 0.3 * n01(rng);
        two.add(wrap_angle(i % 2 ? x : pi + x));
        one.add(wrap_angle(pi + x));
    }
    CHECK(bimodal_zero_pi(two));
    CHECK_FALSE(unimodal_at_pi(two));
    CHECK(unimodal_at_pi(one));
    CHECK_FALSE(bimodal_zero_pi(one));
    CHECK_FALSE(structureless(one));
}

TEST_CASE("phase statistics are order independent") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.0);
    const SampleSchedule sched = SampleSchedule::uniform(max_step(p), 30.0, 50);
    const PhaseStatistics a = phase_statistics_ensemble(p, 40, sched, 6, 10.0);
    const PhaseStatistics b = reference::phase_statistics_ensemble(p, 40, sched, 6, 10.0);
    CHECK(a.histogram.counts() == b.histogram.counts());
    CHECK(a.scatter == b.scatter);
}

TEST_CASE("correlation of an AR(1) series") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> n01;
    const double a = 0.9;
    std::vector<double> x(400000);
    double v = 0.0;
    for (double& xi : x) {
        v = a * v + n01(rng);
        xi = v;
    }
    const std::vector<char> valid(x.size(), 1);
    const std::vector<double> taus{0.0, 0.1, 0.2, 0.5};
    const PhaseCorrelation c = cos_correlation_series(x, valid, 0.1, taus);
    CHECK(c.values[0] == doctest::Approx(1.0));
    CHECK(c.values[1] == doctest::Approx(a).epsilon(0.01));
    CHECK(c.values[2] == doctest::Approx(a * a).epsilon(0.02));
    CHECK(c.values[3] == doctest::Approx(std::pow(a, 5)).epsilon(0.03));

    std::shuffle(x.begin(), x.end(), rng);
    const PhaseCorrelation s = cos_correlation_series(x, valid, 0.1, taus);
    for (std::size_t i = 1; i < taus.size(); ++i) CHECK(std::abs(s.values[i]) < 3.0 / std::sqrt(400000.0));
}

TEST_CASE("constant series is degenerate") {
    const std::vector<double> x(100, 0.5);
    CHECK_THROWS_AS(cos_correlation_series(x, std::vector<char>(100, 1), 0.1, {0.0, 0.1}), NumericalError);
    CHECK_THROWS_AS(cos_correlation_series({0.1, 0.2, 0.3}, {1, 1, 1}, 0.1, {0.05}), std::invalid_argument);
}

TEST_CASE("spectrum from the exact steady state equals the resolvent") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const ChiBlock ss = steady_state(p);
    TrajectorySteadyState t;
    t.chi1 = ss.vec(0);
    t.chi4 = ss.vec(3).real();
    t.n_traj = 1000;
    const auto grid = default_grid();
    const SpectrumGrid a = spectrum_from_steady_state(p, grid, t);
    const SpectrumGrid b = spectrum_resolvent(p, grid);
    CHECK(a.method == SpectrumMethod::trajectory);
    for (std::size_t i = 0; i < grid.size(); i += 50) {
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
        CHECK(a.errors[i] == 0.0);
    }
}

TEST_CASE("trajectory spectrum lies within its error band") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.0);
    TrajectorySpectrumOptions opt;
    opt.n_traj = 300;
    opt.seed = 4;
    const auto grid = uniform_grid(-3.0, 3.0, 61);
    const SpectrumGrid s = spectrum_from_trajectories(p, grid, opt);
    const SpectrumGrid ref = spectrum_resolvent(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(s.values[i] - ref.values[i]) <= 4.0 * s.errors[i]);
}
