#pragma once

#include <cmath>

namespace noisyatom::detail {

struct CosSin {
    double c;
    double s;
};

// cos and sin for the per-step noise rotations. Those angles are a few tenths of a
// radian at most, where a Taylor polynomial is exact to rounding and much cheaper
// than the libm calls; larger arguments fall through to libm.
inline CosSin cos_sin(double x) {
    if (std::abs(x) > 0.5) return {std::cos(x), std::sin(x)};
    const double x2 = x * x;
    // Truncation below x^16/16! and x^17/17!, i.e. < 1e-18 for |x| <= 0.5.
    const double c = 1.0 + x2 * (-1.0 / 2 + x2 * (1.0 / 24 + x2 * (-1.0 / 720 + x2 * (1.0 / 40320 +
                     x2 * (-1.0 / 3628800 + x2 * (1.0 / 479001600 + x2 * (-1.0 / 87178291200.0)))))));
    const double s = x * (1.0 + x2 * (-1.0 / 6 + x2 * (1.0 / 120 + x2 * (-1.0 / 5040 + x2 * (1.0 / 362880 +
                     x2 * (-1.0 / 39916800 + x2 * (1.0 / 6227020800.0 + x2 * (-1.0 / 1307674368000.0))))))));
    return {c, s};
}

}  // namespace noisyatom::detail
