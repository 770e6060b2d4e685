#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "noisyatom/stats.hpp"

namespace noisyatom {

// Quantities averaged over paths or trajectories. The chi1 pair is the
// coherence dressed with the laser phase, rho_eg e^{-i phi}; coll_factor is
// e^{i W} with W the accumulated collisional phase.
enum class Observable {
    rho_ee,
    rho_gg,
    re_rho_eg,
    im_rho_eg,
    re_chi1,
    im_chi1,
    trace,
    re_coll_factor,
    im_coll_factor,
};

const char* to_string(Observable o);

struct EnsembleSeries {
    std::vector<double> times;
    std::vector<Observable> observables;
    std::vector<std::vector<RunningStats>> stats;  // [observable][sample]
    std::size_t n_members = 0;

    std::size_t index_of(Observable o) const;
    double mean(Observable o, std::size_t sample) const;
    double stderr_mean(Observable o, std::size_t sample) const;  // NaN when n_members < 2
    bool stderr_defined() const { return n_members >= 2; }

    // Empty series with the right shape, for accumulation.
    static EnsembleSeries shaped(const std::vector<double>& times, const std::vector<Observable>& obs);
    void merge(const EnsembleSeries& other);
};

}  // namespace noisyatom
