#pragma once

#include <string>
#include <vector>

#include "noisyatom/spectrum.hpp"

namespace noisyatom {

// Index of omega = 0 on the grid; throws std::invalid_argument if absent.
std::size_t zero_index(const SpectrumGrid& s);

// Dip at zero frequency: on each side of 0, within |omega| <= half_width, some
// grid value exceeds S(0) (1 + rel). Insensitive to a narrow bump riding on
// the dip centre.
bool dip_present(const SpectrumGrid& s, double half_width, double rel = 1e-6);

// S(0) < S(+-k h) for k = 1..steps on grid step h.
bool strict_local_minimum(const SpectrumGrid& s, int steps = 3);

struct Extremum {
    std::size_t index;
    double omega;
    double value;
};

// Interior grid points with S[i-1] < S[i] >= S[i+1], restricted to |omega| <= window.
std::vector<Extremum> local_maxima(const SpectrumGrid& s, double window);
std::vector<Extremum> local_minima(const SpectrumGrid& s, double window);

enum class SpectrumShape { triplet, doublet_with_dip, single_peaked, unclassified };

const char* to_string(SpectrumShape s);

struct LimitReport {
    SpectrumShape shape = SpectrumShape::unclassified;
    std::string regime;  // weak-noise, collisional, phase-noise or none
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
    SpectrumGrid spectrum;
};

// Shape classification of the closed-form spectrum on [-3, 3] Omega with step 0.01 Omega.
LimitReport limit_check(const SystemParams& p);

// Same classification on an already computed spectrum.
LimitReport limit_check(const SystemParams& p, const SpectrumGrid& s);

}  // namespace noisyatom
