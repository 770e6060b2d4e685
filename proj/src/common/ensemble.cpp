#include "noisyatom/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace noisyatom {

const char* to_string(Observable o) {
    switch (o) {
        case Observable::rho_ee: return "rho_ee";
        case Observable::rho_gg: return "rho_gg";
        case Observable::re_rho_eg: return "re_rho_eg";
        case Observable::im_rho_eg: return "im_rho_eg";
        case Observable::re_chi1: return "re_chi1";
        case Observable::im_chi1: return "im_chi1";
        case Observable::trace: return "trace";
        case Observable::re_coll_factor: return "re_coll_factor";
        case Observable::im_coll_factor: return "im_coll_factor";
    }
    return "unknown";
}

std::size_t EnsembleSeries::index_of(Observable o) const {
    const auto it = std::find(observables.begin(), observables.end(), o);
    if (it == observables.end()) throw std::invalid_argument(std::string("observable not recorded: ") + to_string(o));
    return static_cast<std::size_t>(it - observables.begin());
}

double EnsembleSeries::mean(Observable o, std::size_t sample) const { return stats[index_of(o)][sample].mean; }

double EnsembleSeries::stderr_mean(Observable o, std::size_t sample) const {
    return stats[index_of(o)][sample].stderr_mean();
}

EnsembleSeries EnsembleSeries::shaped(const std::vector<double>& times, const std::vector<Observable>& obs) {
    EnsembleSeries s;
    s.times = times;
    s.observables = obs;
    s.stats.assign(obs.size(), std::vector<RunningStats>(times.size()));
    return s;
}

void EnsembleSeries::merge(const EnsembleSeries& other) {
    for (std::size_t o = 0; o < stats.size(); ++o)
        for (std::size_t k = 0; k < stats[o].size(); ++k) stats[o][k].merge(other.stats[o][k]);
    n_members += other.n_members;
}

}  // namespace noisyatom
