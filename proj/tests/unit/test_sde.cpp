#include <cmath>

#include <doctest.h>

#include "noisyatom/chi_block.hpp"
#include "noisyatom/noise.hpp"
#include "noisyatom/sde.hpp"

using namespace noisyatom;

TEST_CASE("seed derivation is deterministic and spreads indices") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("noise path increments have variance 2 rate dt") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const double dt = 0.002;
    const NoisePath path = NoisePath::generate(42, p, dt, 200000);
    RunningStats c, f;
    for (double x : path.dW_coll) c.add(x);
    for (double x : path.dW_phase) f.add(x);
    CHECK(std::abs(c.mean) < 4.0 * std::sqrt(2.0 * 5.0 * dt / 200000.0));
    CHECK(c.variance() == doctest::Approx(2.0 * 5.0 * dt).epsilon(0.02));
    CHECK(f.variance() == doctest::Approx(2.0 * 0.2 * dt).epsilon(0.02));
    const NoisePath again = NoisePath::generate(42, p, dt, 200000);
    CHECK(again.dW_coll == path.dW_coll);
}

TEST_CASE("single noiseless path follows the Rabi solution") {
    const SystemParams p(1.0, 0.0, 0.0, 0.0, 0.0);
    const auto samples = integrate_sbe(p, 1, DensityMatrix::ground(), SampleSchedule::uniform(0.01, 10.0, 100));
    for (const auto& s : samples) {
        const double x = std::sin(0.5 * s.t);
        CHECK(s.rho.rho_ee == doctest::Approx(x * x).epsilon(1e-9));
        CHECK(s.rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("collisional phase factor decays as exp(-Gamma t)") {
    const SystemParams p(1.0, 0.0, 0.05, 2.0, 0.0);
    const SampleSchedule sched = SampleSchedule::at_times(max_step(p), {0.1, 0.3, 0.6});
    const EnsembleSeries s =
        ensemble_average(p, 4000, {Observable::re_coll_factor, Observable::im_coll_factor}, sched, 77);
    for (std::size_t k = 1; k < s.times.size(); ++k) {
        const double expect = std::exp(-p.coll * s.times[k]);
        CHECK(std::abs(s.mean(Observable::re_coll_factor, k) - expect) <= 3.0 * s.stderr_mean(Observable::re_coll_factor, k));
        CHECK(std::abs(s.mean(Observable::im_coll_factor, k)) <= 3.0 * s.stderr_mean(Observable::im_coll_factor, k));
    }
}

TEST_CASE("ensemble mean matches the averaged equations") {
    const SystemParams p(1.0, 0.3, 0.05, 1.0, 0.3);
    const std::vector<double> times{2.0, 5.0, 10.0};
    const SampleSchedule sched = SampleSchedule::at_times(max_step(p), times);
    const EnsembleSeries s =
        ensemble_average(p, 2000, {Observable::rho_ee, Observable::re_chi1, Observable::im_chi1}, sched, 5);
    const ChiBlock b0 = make_block(ChiKind::primed, p, DensityMatrix::ground());
    for (std::size_t k = 1; k < s.times.size(); ++k) {
        const ChiBlock b = evolve(b0, s.times[k]);
        CHECK(std::abs(s.mean(Observable::rho_ee, k) - b.vec(3).real()) <= 4.0 * s.stderr_mean(Observable::rho_ee, k));
        CHECK(std::abs(s.mean(Observable::re_chi1, k) - b.vec(0).real()) <= 4.0 * s.stderr_mean(Observable::re_chi1, k));
        CHECK(std::abs(s.mean(Observable::im_chi1, k) - b.vec(0).imag()) <= 4.0 * s.stderr_mean(Observable::im_chi1, k));
    }
}

TEST_CASE("standard error shrinks as one over root n") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const SampleSchedule sched = SampleSchedule::at_times(max_step(p), {5.0});
    const auto a = ensemble_average(p, 400, {Observable::rho_ee}, sched, 9);
    const auto b = ensemble_average(p, 1600, {Observable::rho_ee}, sched, 10);
    const double ratio = a.stderr_mean(Observable::rho_ee, 1) / b.stderr_mean(Observable::rho_ee, 1);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("one path has no standard error") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const auto s = ensemble_average(p, 1, {Observable::rho_ee}, SampleSchedule::at_times(max_step(p), {1.0}), 3);
    CHECK_FALSE(s.stderr_defined());
    CHECK(std::isnan(s.stderr_mean(Observable::rho_ee, 1)));
    CHECK_THROWS(ensemble_average(p, 0, {Observable::rho_ee}, SampleSchedule::at_times(max_step(p), {1.0}), 3));
}

TEST_CASE("ensemble is reproducible and matches its serial reference") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    const SampleSchedule sched = SampleSchedule::uniform(max_step(p), 4.0, 250);
    const std::vector<Observable> obs{Observable::rho_ee, Observable::re_chi1};
    const auto a = ensemble_average(p, 300, obs, sched, 123);
    const auto b = ensemble_average(p, 300, obs, sched, 123);
    const auto r = reference::ensemble_average(p, 300, obs, sched, 123);
    const auto other = ensemble_average(p, 300, obs, sched, 124);
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        CHECK(a.mean(Observable::rho_ee, k) == b.mean(Observable::rho_ee, k));
        // the serial reference sums in one pass, the parallel path merges fixed chunks
        CHECK(a.mean(Observable::rho_ee, k) == doctest::Approx(r.mean(Observable::rho_ee, k)).epsilon(1e-12));
        CHECK(a.stderr_mean(Observable::re_chi1, k) ==
              doctest::Approx(r.stderr_mean(Observable::re_chi1, k)).epsilon(1e-9));
    }
    CHECK(a.mean(Observable::rho_ee, 4) != other.mean(Observable::rho_ee, 4));
}

TEST_CASE("integrator rejects a step above the stability limit") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.2);
    CHECK_THROWS(integrate_sbe(p, 1, DensityMatrix::ground(), SampleSchedule::uniform(0.5, 10.0, 1)));
}
