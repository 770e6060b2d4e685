#include "noisyatom/sde.hpp"

#include <stdexcept>

#include "sde/path_runner.hpp"

namespace noisyatom {

std::vector<SbeSample> integrate_sbe(const SystemParams& p, std::uint64_t path_seed, const DensityMatrix& rho0,
                                     const SampleSchedule& schedule) {
    const detail::SbeStepper stepper(p, schedule, rho0);
    std::vector<SbeSample> out;
    out.reserve(schedule.sample_steps.size());
    stepper.run(path_seed, [&](std::size_t, const SbeSample& s) { out.push_back(s); });
    return out;
}

}  // namespace noisyatom
