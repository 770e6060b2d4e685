#include <cmath>
#include <random>

#include <doctest.h>

#include "noisyatom/chi_block.hpp"
#include "noisyatom/errors.hpp"

using namespace noisyatom;

namespace {

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return SystemParams(1.0, 4.0 * u(rng) - 2.0, 0.02 + 0.5 * u(rng), 5.0 * u(rng), 3.0 * u(rng));
}

}  // namespace

TEST_CASE("steady-state excitation at resonance without noise") {
    for (double gamma : {0.05, 0.3, 1.0}) {
        const SystemParams p(1.0, 0.0, gamma, 0.0, 0.0);
        const DensityMatrix d = steady_state(p).density();
        const double expect = 0.25 / (gamma * gamma + 0.5);
        CHECK(d.rho_ee == doctest::Approx(expect).epsilon(1e-12));
        CHECK(d.trace() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("steady state is stationary and physical") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const SystemParams p = random_params(rng);
        const ChiBlock ss = steady_state(p);
        CHECK((ss.gen * ss.vec).norm() < 1e-12);
        CHECK(ss.density().is_physical(1e-10));
        const ChiBlock later = evolve(ss, 50.0);
        CHECK((later.vec - ss.vec).norm() < 1e-10);
    }
}

TEST_CASE("steady state requires spontaneous decay") {
    CHECK_THROWS_AS(steady_state(SystemParams(1.0, 0.0, 0.0, 1.0, 0.0)), NumericalError);
}

TEST_CASE("weak drive limit follows the scalar decay law") {
    // Omega -> 0 decouples the coherence: chi'1(t) = chi'1(0) exp(N'_11 t).
    const SystemParams p(1e-9, 0.7, 0.1, 0.4, 0.25);
    DensityMatrix rho0;
    rho0.rho_gg = 0.5;
    rho0.rho_ee = 0.5;
    rho0.rho_eg = cplx(0.3, 0.2);
    const ChiBlock b0 = make_block(ChiKind::primed, p, rho0);
    for (double t : {0.5, 2.0, 7.0}) {
        const ChiBlock b = evolve(b0, t);
        const cplx expect = rho0.rho_eg * std::exp(b0.gen(0, 0) * t);
        CHECK(std::abs(b.vec(0) - expect) < 1e-8);
        CHECK(std::real(b0.gen(0, 0)) == doctest::Approx(-(p.gamma + p.coll + p.phase_noise)));
        CHECK(b.density().rho_ee == doctest::Approx(0.5 * std::exp(-2.0 * p.gamma * t)).epsilon(1e-8));
    }
}

TEST_CASE("resonant Rabi oscillation") {
    const SystemParams p(1.0, 0.0, 0.0, 0.0, 0.0);
    const ChiBlock b0 = make_block(ChiKind::primed, p, DensityMatrix::ground());
    for (double t : {0.3, 1.0, 3.14159, 10.0}) {
        const double s = std::sin(0.5 * t);
        CHECK(evolve(b0, t).density().rho_ee == doctest::Approx(s * s).epsilon(1e-10));
    }
}

TEST_CASE("evolution is a semigroup; the primed block keeps trace and conjugation symmetry") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const SystemParams p = random_params(rng);
        for (ChiKind k : {ChiKind::plain, ChiKind::primed, ChiKind::double_primed}) {
            DensityMatrix rho0;
            rho0.rho_gg = 0.7;
            rho0.rho_ee = 0.3;
            rho0.rho_eg = cplx(0.2, -0.35);
            const ChiBlock b = make_block(k, p, rho0);
            const ChiBlock a = evolve(evolve(b, 0.7), 1.9);
            const ChiBlock c = evolve(b, 2.6);
            CHECK((a.vec - c.vec).norm() < 1e-11);
            if (k != ChiKind::primed) continue;
            // only the primed block is free of phase factors on the populations and coherences
            CHECK(std::abs(c.vec(2) + c.vec(3) - 1.0) < 1e-11);
            CHECK(std::abs(c.vec(1) - std::conj(c.vec(0))) < 1e-11);
        }
    }
}

TEST_CASE("evolve rejects negative or non-finite time") {
    const ChiBlock b = make_block(ChiKind::plain, SystemParams(1.0, 0.0, 0.05, 0.0, 0.0), DensityMatrix::ground());
    CHECK_THROWS_AS(evolve(b, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(evolve(b, std::nan("")), std::invalid_argument);
}

TEST_CASE("Q contraction rebuilds the three generators") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        const SystemParams p = random_params(rng);
        const Generators g = build_generators(p);
        const Mat4 m = noiseless_matrix(p);
        for (ChiKind k : {ChiKind::plain, ChiKind::primed, ChiKind::double_primed})
            CHECK((contract(m, q_tensor(p, k)) - g.of(k)).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("printed Q block matches the loadings except two off-diagonal entries") {
    const SystemParams p(1.0, 0.0, 0.05, 2.0, 0.3);
    const Eigen::Matrix4d printed = printed_q_block(p);
    const QTensor q = q_tensor(p, ChiKind::plain);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double derived = -q(i, i, k, k);
            if (i == 1 && (k == 2 || k == 3)) {
                CHECK(derived == doctest::Approx(2.0 * printed(i, k)));
            } else {
                CHECK(derived == doctest::Approx(printed(i, k)));
            }
        }
}
