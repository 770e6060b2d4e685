#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "noisyatom/dressed.hpp"
#include "noisyatom/params.hpp"
#include "noisyatom/state.hpp"

using namespace noisyatom;
using std::numbers::pi;

TEST_CASE("params reject nonphysical input") {
    CHECK_THROWS_AS(SystemParams(0.0, 0.0, 0.05, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 0.0, -0.1, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 0.0, 0.05, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 0.0, 0.05, 0.0, std::nan("")), std::invalid_argument);
    CHECK_NOTHROW(SystemParams(1.0, -3.0, 0.0, 0.0, 0.0));
}

TEST_CASE("max step is 0.01 over the largest rate") {
    CHECK(max_step(SystemParams(1.0, 0.0, 0.05, 5.0, 0.2)) == doctest::Approx(0.002));
    CHECK(max_step(SystemParams(1.0, 0.0, 0.05, 0.0, 0.0)) == doctest::Approx(0.01));
    CHECK(max_step(SystemParams(1.0, -7.0, 0.05, 0.0, 0.0)) == doctest::Approx(0.01 / 7.0));
}

TEST_CASE("scaling multiplies every rate") {
    const SystemParams p = SystemParams(1.0, 0.3, 0.05, 5.0, 0.2).scaled(2.0);
    CHECK(p.rabi == 2.0);
    CHECK(p.detuning == doctest::Approx(0.6));
    CHECK(p.gamma == doctest::Approx(0.1));
    CHECK(p.coll == doctest::Approx(10.0));
    CHECK(p.phase_noise == doctest::Approx(0.4));
}

TEST_CASE("density matrix from a pure state") {
    AtomState s;
    s.amp_g = cplx(0.6, 0.0);
    s.amp_e = cplx(0.0, 0.8);
    const DensityMatrix d = DensityMatrix::from_state(s);
    CHECK(d.rho_ee == doctest::Approx(0.64));
    CHECK(d.rho_gg == doctest::Approx(0.36));
    CHECK(d.trace() == doctest::Approx(1.0));
    CHECK(std::abs(d.rho_eg - s.amp_e * std::conj(s.amp_g)) < 1e-15);
    CHECK(d.is_physical());
    DensityMatrix bad;
    bad.rho_gg = 0.5;
    bad.rho_ee = 0.5;
    bad.rho_eg = 0.9;
    CHECK_FALSE(bad.is_physical());
}

TEST_CASE("mixing angle branch") {
    CHECK(mixing_angle(SystemParams(1.0, 0.0, 0.05, 0.0, 0.0)) == doctest::Approx(pi / 4));
    // continuous from the negative-detuning side
    CHECK(mixing_angle(SystemParams(1.0, -1e-9, 0.05, 0.0, 0.0)) == doctest::Approx(pi / 4).epsilon(1e-6));
    const double th = mixing_angle(SystemParams(1.0, 2.0, 0.05, 0.0, 0.0));
    CHECK(th == doctest::Approx(-0.5 * std::atan(0.5)));
    CHECK(th > -pi / 4);
    CHECK(th <= pi / 4);
}

TEST_CASE("ground state at resonance has dphi = pi") {
    const SystemParams p(1.0, 0.0, 0.05, 5.0, 0.0);
    const DressedDecomposition d = to_dressed(AtomState{}, p);
    CHECK(d.valid());
    CHECK(d.c1 == doctest::Approx(d.c2));
    CHECK(std::abs(std::abs(d.dphi()) - pi) < 1e-12);
}

TEST_CASE("dressed decomposition round trip") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    for (int i = 0; i < 200; ++i) {
        AtomState s;
        s.amp_g = cplx(n01(rng), n01(rng));
        s.amp_e = cplx(n01(rng), n01(rng));
        s.phi = n01(rng);
        s.normalize();
        const double theta = 0.3 * n01(rng);
        const DressedDecomposition d = to_dressed(s, theta);
        CHECK(d.c1 * d.c1 + d.c2 * d.c2 == doctest::Approx(1.0));
        const AtomState r = reconstruct(d, s.phi);
        CHECK(std::abs(r.amp_g - s.amp_g) < 1e-12);
        CHECK(std::abs(r.amp_e - s.amp_e) < 1e-12);
    }
}

TEST_CASE("collision swaps the dressed states at resonance") {
    const SwapCheck ok = collisional_swap_check(SystemParams(1.0, 0.0, 0.05, 5.0, 0.0));
    CHECK_MESSAGE(ok.ok, ok.diagnostic);
    const SwapCheck off = collisional_swap_check(SystemParams(1.0, 0.4, 0.05, 5.0, 0.0));
    CHECK_FALSE(off.ok);
    CHECK_FALSE(off.diagnostic.empty());

    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    const double theta = pi / 4;
    for (int i = 0; i < 100; ++i) {
        AtomState s;
        s.amp_g = cplx(n01(rng), n01(rng));
        s.amp_e = cplx(n01(rng), n01(rng));
        s.normalize();
        const DressedDecomposition a = to_dressed(s, theta);
        const AtomState f = apply_two_sz(s);
        const DressedDecomposition b = to_dressed(f, theta);
        CHECK(b.c1 == doctest::Approx(a.c2));
        CHECK(b.c2 == doctest::Approx(a.c1));
        CHECK(std::abs(wrap_angle(b.dphi() + a.dphi())) < 1e-12);
        CHECK(std::abs(wrap_angle(b.sphi() - a.sphi())) < 1e-12);
    }
}

TEST_CASE("angle wrapping and phase-sum unwrapping") {
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
    PhaseSumUnwrapper u;
    double raw = 0.0, last = 0.0;
    for (int i = 0; i < 1000; ++i) {
        raw += 0.1;
        last = u.push(wrap_angle(raw));
    }
    CHECK(last == doctest::Approx(raw).epsilon(1e-12));
}
