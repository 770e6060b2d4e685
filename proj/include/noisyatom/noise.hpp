#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "noisyatom/params.hpp"

namespace noisyatom {

// splitmix64 step: advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of work unit `index` under `master`. Distinct (master, index) pairs give
// unrelated seeds; the mapping is fixed so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Two independent Gaussian streams per path (ziggurat normals on mt19937_64):
// collisional frequency noise and laser phase diffusion. Increments over an interval h have variance 2 Gamma h
// and 2 L h. A stream with zero rate returns 0 without consuming randomness.
class NoiseSource {
public:
    NoiseSource(std::uint64_t seed, double coll, double phase_noise);

    // Increments with variance 2 * rate * h; zero when the rate is zero.
    double coll(double h) {
        if (coll_rate_ == 0.0) return 0.0;
        if (h != coll_h_) {
            coll_h_ = h;
            coll_sigma_ = std::sqrt(2.0 * coll_rate_ * h);
        }
        return coll_sigma_ * coll_normal_(coll_eng_);
    }
    double phase(double h) {
        if (phase_rate_ == 0.0) return 0.0;
        if (h != phase_h_) {
            phase_h_ = h;
            phase_sigma_ = std::sqrt(2.0 * phase_rate_ * h);
        }
        return phase_sigma_ * phase_normal_(phase_eng_);
    }

    // Extra stream for jump decisions in the trajectory engine.
    std::mt19937_64& jump_engine() { return jump_; }

private:
    std::mt19937_64 coll_eng_;
    std::mt19937_64 phase_eng_;
    std::mt19937_64 jump_;
    boost::random::normal_distribution<double> coll_normal_;
    boost::random::normal_distribution<double> phase_normal_;
    double coll_rate_;
    double phase_rate_;
    // Last interval and its standard deviation, per stream.
    double coll_h_ = -1.0, coll_sigma_ = 0.0;
    double phase_h_ = -1.0, phase_sigma_ = 0.0;
};

// Realized per-step increments of both noises over n_steps steps of size dt.
struct NoisePath {
    std::uint64_t seed = 0;
    double dt = 0.0;
    std::vector<double> dW_coll;
    std::vector<double> dW_phase;

    static NoisePath generate(std::uint64_t seed, const SystemParams& p, double dt, std::size_t n_steps);
};

}  // namespace noisyatom
