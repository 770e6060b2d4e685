#include "noisyatom/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noisyatom {

std::vector<double> SampleSchedule::times() const {
    std::vector<double> t(sample_steps.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(sample_steps[i]) * dt;
    return t;
}

SampleSchedule SampleSchedule::uniform(double dt, double t_end, std::size_t stride) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("schedule: dt must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("schedule: t_end must be > 0");
    if (stride == 0) throw std::invalid_argument("schedule: stride must be >= 1");
    const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
    if (n == 0) throw std::invalid_argument("schedule: t_end shorter than one step");
    SampleSchedule s;
    s.dt = dt;
    for (std::size_t k = 0; k <= n; k += stride) s.sample_steps.push_back(k);
    if (s.sample_steps.back() != n) s.sample_steps.push_back(n);
    return s;
}

SampleSchedule SampleSchedule::at_times(double dt, const std::vector<double>& times) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("schedule: dt must be > 0");
    SampleSchedule s;
    s.dt = dt;
    s.sample_steps.push_back(0);
    for (double t : times) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("schedule: times must be finite and >= 0");
        const double k = t / dt;
        const double r = std::round(k);
        if (std::abs(k - r) > 1e-6 * std::max(1.0, k))
            throw std::invalid_argument("schedule: sample time is not a whole number of steps");
        s.sample_steps.push_back(static_cast<std::size_t>(r));
    }
    std::sort(s.sample_steps.begin(), s.sample_steps.end());
    s.sample_steps.erase(std::unique(s.sample_steps.begin(), s.sample_steps.end()), s.sample_steps.end());
    if (s.n_steps() == 0) throw std::invalid_argument("schedule: need a sample after t = 0");
    return s;
}

}  // namespace noisyatom
