#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "noisyatom/chi_block.hpp"
#include "noisyatom/closed_form.hpp"
#include "noisyatom/errors.hpp"
#include "noisyatom/shape.hpp"
#include "noisyatom/spectrum.hpp"

using namespace noisyatom;

namespace {

SystemParams fig1(double L) { return SystemParams(1.0, 0.0, 0.05, 5.0, L); }

// Integral of S over the real line: trapezoid on a graded grid plus the c/omega^2 tail.
double total_weight(const SystemParams& p) {
    const double edges[] = {0.0, 3.0, 30.0, 300.0, 3000.0};
    const double steps[] = {5e-4, 5e-3, 5e-2, 0.5};
    double sum = 0.0;
    for (int sign : {-1, 1})
        for (int seg = 0; seg < 4; ++seg) {
            const auto n = static_cast<std::size_t>(std::lround((edges[seg + 1] - edges[seg]) / steps[seg])) + 1;
            std::vector<double> w = uniform_grid(edges[seg], edges[seg + 1], n);
            for (double& x : w) x *= sign;
            const SpectrumGrid s = spectrum_resolvent(p, w);
            for (std::size_t i = 1; i < n; ++i) sum += 0.5 * (s.values[i] + s.values[i - 1]) * steps[seg];
            if (seg == 3) {
                const double c = s.values.back() * edges[4] * edges[4];
                sum += c / edges[4];
            }
        }
    return sum;
}

}  // namespace

TEST_CASE("grids") {
    const auto g = default_grid();
    CHECK(g.size() == 2001);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == 10.0);
    CHECK(g[1000] == 0.0);
    CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("resolvent spectrum obeys the sum rule") {
    // integral of S plus pi times the elastic weight equals pi <chi'4>
    for (const SystemParams& p : {SystemParams(1.0, 0.0, 0.05, 0.0, 0.0), SystemParams(1.0, 0.6, 0.2, 1.0, 0.0),
                                  SystemParams(1.0, -0.4, 0.1, 2.0, 0.5)}) {
        const double rho_ee = steady_state(p).density().rho_ee;
        const double elastic = spectrum_resolvent(p, {0.0}).elastic_weight;
        const double total = total_weight(p) + std::numbers::pi * elastic;
        CHECK(total == doctest::Approx(std::numbers::pi * rho_ee).epsilon(2e-4));
    }
}

TEST_CASE("resolvent spectrum is nonnegative") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = uniform_grid(-10.0, 10.0, 401);
    for (int i = 0; i < 40; ++i) {
        const SystemParams p(1.0, 4.0 * u(rng) - 2.0, 0.02 + 0.5 * u(rng), 5.0 * u(rng), 3.0 * u(rng));
        const SpectrumGrid s = spectrum_resolvent(p, grid);
        for (double v : s.values) CHECK(v >= -1e-12 * s.peak());
    }
}

TEST_CASE("elastic weight is |<chi'1>|^2 and vanishes with phase noise") {
    const SystemParams p0 = fig1(0.0);
    const cplx chi1 = steady_state(p0).vec(0);
    CHECK(spectrum_resolvent(p0, default_grid()).elastic_weight == doctest::Approx(std::norm(chi1)).epsilon(1e-10));
    CHECK(spectrum_resolvent(fig1(0.2), default_grid()).elastic_weight == 0.0);
}

TEST_CASE("parallel and serial resolvent agree bit for bit") {
    const RegressionInputs in = regression_inputs(fig1(0.2));
    const auto grid = default_grid();
    const SpectrumGrid a = spectrum_resolvent(in, grid);
    const SpectrumGrid b = reference::spectrum_resolvent(in, grid);
    CHECK(a.values == b.values);
}

TEST_CASE("closed form coincides with the column-four regression pairing") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = uniform_grid(-10.0, 10.0, 201);
    for (int i = 0; i < 20; ++i) {
        const SystemParams p(1.0, 4.0 * u(rng) - 2.0, 0.02 + 0.5 * u(rng), 5.0 * u(rng), 0.05 + 3.0 * u(rng));
        const SpectrumGrid cf = spectrum_closed_form(p, grid);
        const SpectrumGrid c4 = spectrum_resolvent(p, grid, kColumnFourPairing);
        for (std::size_t k = 0; k < grid.size(); ++k)
            CHECK(cf.values[k] == doctest::Approx(c4.values[k]).epsilon(1e-10));
    }
}

TEST_CASE("closed form needs gamma > 0") {
    CHECK_THROWS(spectrum_closed_form(SystemParams(1.0, 0.0, 0.0, 1.0, 0.1), default_grid()));
}

TEST_CASE("limit shapes") {
    const LimitReport mollow = limit_check(SystemParams(1.0, 0.0, 0.05, 0.0, 0.0));
    CHECK(mollow.shape == SpectrumShape::triplet);
    CHECK(mollow.regime == "weak-noise");
    const LimitReport coll = limit_check(SystemParams(1.0, 0.0, 0.05, 5.0, 0.0));
    CHECK(coll.shape == SpectrumShape::doublet_with_dip);
    CHECK(coll.regime == "collisional");
    const LimitReport phase = limit_check(SystemParams(1.0, 0.0, 0.05, 0.0, 5.0));
    CHECK(phase.shape == SpectrumShape::single_peaked);
    CHECK(phase.regime == "phase-noise");
    CHECK(limit_check(SystemParams(1.0, 0.5, 0.05, 0.0, 0.0)).regime == "none");
}

TEST_CASE("Mollow sidebands on the resolvent route") {
    const SystemParams p(1.0, 0.0, 0.05, 0.0, 0.0);
    const LimitReport r = limit_check(p, spectrum_resolvent(p, uniform_grid(-3.0, 3.0, 601)));
    REQUIRE(r.maxima.size() == 3);
    CHECK(std::abs(r.maxima[0].omega + 1.0) <= 0.0100001);
    CHECK(std::abs(r.maxima[1].omega) <= 0.0100001);
    CHECK(std::abs(r.maxima[2].omega - 1.0) <= 0.0100001);
}

TEST_CASE("dip predicate across phase noise on the closed form") {
    const auto grid = default_grid();
    CHECK(dip_present(spectrum_closed_form(fig1(0.0), grid), 2.0));
    CHECK(dip_present(spectrum_closed_form(fig1(0.2), grid), 2.0));
    CHECK(dip_present(spectrum_closed_form(fig1(1.0), grid), 2.0));
    CHECK_FALSE(dip_present(spectrum_closed_form(fig1(2.0), grid), 2.0));
    CHECK_FALSE(dip_present(spectrum_closed_form(fig1(3.0), grid), 2.0));
    CHECK(strict_local_minimum(spectrum_closed_form(fig1(0.0), grid)));
}

TEST_CASE("collisional pedestal decays like a Lorentzian") {
    const auto grid = uniform_grid(-50.0, 50.0, 10001);
    const SpectrumGrid s = spectrum_resolvent(fig1(0.2), grid);
    const double peak = s.peak();
    CHECK(s.values.back() / peak < 2e-2);
    double bound = 0.0;
    for (std::size_t i = 7000; i < grid.size(); ++i) {
        CHECK(s.values[i] <= s.values[i - 1]);
        bound = std::max(bound, grid[i] * grid[i] * s.values[i]);
    }
    CHECK(bound < 10.0);
}

TEST_CASE("peak normalization") {
    const SpectrumGrid s = spectrum_resolvent(fig1(1.0), default_grid());
    const auto n = s.peak_normalized();
    CHECK(*std::max_element(n.begin(), n.end()) == doctest::Approx(1.0));
}
