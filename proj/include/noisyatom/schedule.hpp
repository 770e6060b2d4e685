#pragma once

#include <cstddef>
#include <vector>

namespace noisyatom {

// Fixed-step time grid with the step indices at which the state is recorded.
// Step 0 (t = 0) is always recorded; the run ends at the last sample.
struct SampleSchedule {
    double dt = 0.0;
    std::vector<std::size_t> sample_steps;

    std::size_t n_steps() const { return sample_steps.empty() ? 0 : sample_steps.back(); }
    std::vector<double> times() const;

    // Samples every `stride` steps from 0 up to t_end (rounded to whole steps).
    static SampleSchedule uniform(double dt, double t_end, std::size_t stride);

    // Samples at 0 and at each listed time; each must be a whole number of steps.
    static SampleSchedule at_times(double dt, const std::vector<double>& times);
};

}  // namespace noisyatom
