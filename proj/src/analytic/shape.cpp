#include "noisyatom/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noisyatom/closed_form.hpp"

namespace noisyatom {

namespace {

double grid_step(const SpectrumGrid& s) {
    if (s.omegas.size() < 2) throw std::invalid_argument("spectrum grid needs at least two points");
    return (s.omegas.back() - s.omegas.front()) / static_cast<double>(s.omegas.size() - 1);
}

std::string regime_of(const SystemParams& p) {
    if (p.detuning != 0.0) return "none";
    const double O = p.rabi;
    if (p.coll <= 0.1 * O && p.phase_noise <= 0.1 * O) return "weak-noise";
    if (p.coll >= 3.0 * O && p.phase_noise == 0.0) return "collisional";
    if (p.phase_noise >= 3.0 * O && p.coll == 0.0) return "phase-noise";
    return "none";
}

}  // namespace

std::size_t zero_index(const SpectrumGrid& s) {
    const double tol = 1e-9 * grid_step(s);
    for (std::size_t i = 0; i < s.omegas.size(); ++i)
        if (std::abs(s.omegas[i]) <= tol) return i;
    throw std::invalid_argument("spectrum grid does not contain omega = 0");
}

bool dip_present(const SpectrumGrid& s, double half_width, double rel) {
    const std::size_t z = zero_index(s);
    const double level = s.values[z] * (1.0 + rel);
    bool left = false, right = false;
    for (std::size_t i = 0; i < s.omegas.size(); ++i) {
        if (i == z || std::abs(s.omegas[i]) > half_width) continue;
        if (s.values[i] > level) (s.omegas[i] < 0.0 ? left : right) = true;
    }
    return left && right;
}

bool strict_local_minimum(const SpectrumGrid& s, int steps) {
    const std::size_t z = zero_index(s);
    if (z < static_cast<std::size_t>(steps) || z + static_cast<std::size_t>(steps) >= s.values.size())
        return false;
    for (int k = 1; k <= steps; ++k)
        if (!(s.values[z] < s.values[z - k] && s.values[z] < s.values[z + k])) return false;
    return true;
}

std::vector<Extremum> local_maxima(const SpectrumGrid& s, double window) {
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) {
        if (std::abs(s.omegas[i]) > window) continue;
        if (s.values[i - 1] < s.values[i] && s.values[i] >= s.values[i + 1])
            out.push_back({i, s.omegas[i], s.values[i]});
    }
    return out;
}

std::vector<Extremum> local_minima(const SpectrumGrid& s, double window) {
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) {
        if (std::abs(s.omegas[i]) > window) continue;
        if (s.values[i - 1] > s.values[i] && s.values[i] <= s.values[i + 1])
            out.push_back({i, s.omegas[i], s.values[i]});
    }
    return out;
}

const char* to_string(SpectrumShape s) {
    switch (s) {
        case SpectrumShape::triplet: return "triplet";
        case SpectrumShape::doublet_with_dip: return "doublet-with-dip";
        case SpectrumShape::single_peaked: return "single-peaked";
        case SpectrumShape::unclassified: return "unclassified";
    }
    return "unclassified";
}

LimitReport limit_check(const SystemParams& p) {
    const std::vector<double> grid = uniform_grid(-3.0 * p.rabi, 3.0 * p.rabi, 601);
    return limit_check(p, spectrum_closed_form(p, grid));
}

LimitReport limit_check(const SystemParams& p, const SpectrumGrid& s) {
    LimitReport r;
    r.spectrum = s;
    r.regime = regime_of(p);
    const double h = grid_step(s);
    const double window = 3.0 * p.rabi;
    r.maxima = local_maxima(s, window);
    r.minima = local_minima(s, window);

    auto near = [&](const Extremum& e, double target) { return std::abs(e.omega - target) <= h * (1.0 + 1e-9); };
    auto has_max_near = [&](double target) {
        return std::any_of(r.maxima.begin(), r.maxima.end(), [&](const Extremum& e) { return near(e, target); });
    };

    if (r.regime == "weak-noise") {
        if (r.maxima.size() == 3 && has_max_near(0.0) && has_max_near(p.rabi) && has_max_near(-p.rabi))
            r.shape = SpectrumShape::triplet;
    } else if (r.regime == "collisional") {
        const bool left = std::any_of(r.maxima.begin(), r.maxima.end(), [](const Extremum& e) { return e.omega < 0.0; });
        const bool right = std::any_of(r.maxima.begin(), r.maxima.end(), [](const Extremum& e) { return e.omega > 0.0; });
        if (left && right && dip_present(s, 2.0 * p.rabi)) r.shape = SpectrumShape::doublet_with_dip;
    } else if (r.regime == "phase-noise") {
        if (r.maxima.size() == 1 && near(r.maxima.front(), 0.0) && !dip_present(s, 2.0 * p.rabi))
            r.shape = SpectrumShape::single_peaked;
    }
    return r;
}

}  // namespace noisyatom
