#include <cmath>
#include <stdexcept>

#include "noisyatom/errors.hpp"
#include "noisyatom/trajectory.hpp"

namespace noisyatom {

PhaseCorrelation cos_correlation_series(const std::vector<double>& x, const std::vector<char>& valid, double sample_dt,
                                        const std::vector<double>& taus) {
    if (x.size() != valid.size()) throw std::invalid_argument("cos_correlation: value and mask sizes differ");
    if (!(sample_dt > 0.0)) throw std::invalid_argument("cos_correlation: sample interval must be > 0");
    const std::size_t n = x.size();

    double sum = 0.0;
    std::size_t n_valid = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (valid[i]) {
            sum += x[i];
            ++n_valid;
        }
    if (n_valid < 2) throw NumericalError("degenerate-series", "fewer than two valid samples");
    const double mean = sum / static_cast<double>(n_valid);

    auto lagged = [&](std::size_t lag) {
        double acc = 0.0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            if (!valid[i] || !valid[i + lag]) continue;
            acc += (x[i + lag] - mean) * (x[i] - mean);
            ++pairs;
        }
        return pairs ? acc / static_cast<double>(pairs) : std::nan("");
    };

    const double c0 = lagged(0);
    if (!(c0 > 1e-14)) throw NumericalError("degenerate-series", "cos(dphi) is constant over the window");

    PhaseCorrelation out;
    out.taus = taus;
    out.c = 1.0 / c0;
    out.window = static_cast<double>(n) * sample_dt;
    out.n_samples = n_valid;
    out.values.reserve(taus.size());
    for (double tau : taus) {
        const double l = tau / sample_dt;
        const double r = std::round(l);
        if (tau < 0.0 || std::abs(l - r) > 1e-6 * std::max(1.0, l))
            throw std::invalid_argument("cos_correlation: tau must be a non-negative multiple of the sample interval");
        const auto lag = static_cast<std::size_t>(r);
        if (lag >= n) throw std::invalid_argument("cos_correlation: tau exceeds the record length");
        out.values.push_back(lag == 0 ? 1.0 : lagged(lag) * out.c);
    }
    return out;
}

PhaseCorrelation cos_correlation(const TrajectoryRecord& record, const std::vector<double>& taus, double t_discard) {
    std::vector<double> values;
    std::vector<char> mask;
    double first = -1.0, second = -1.0;
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        if (record.times[i] < t_discard) continue;
        if (first < 0.0)
            first = record.times[i];
        else if (second < 0.0)
            second = record.times[i];
        const PhaseObservation& ob = record.phase_obs[i];
        values.push_back(ob.valid ? std::cos(ob.dphi) : 0.0);
        mask.push_back(ob.valid ? 1 : 0);
    }
    if (values.size() < 2) throw NumericalError("degenerate-series", "record shorter than the transient discard");
    const double h = second - first;
    // The record must be uniformly sampled after the discard point.
    const std::size_t start = record.times.size() - values.size();
    for (std::size_t i = start + 1; i < record.times.size(); ++i)
        if (std::abs(record.times[i] - record.times[i - 1] - h) > 1e-9 * h)
            throw std::invalid_argument("cos_correlation: record is not uniformly sampled");
    return cos_correlation_series(values, mask, h, taus);
}

}  // namespace noisyatom
