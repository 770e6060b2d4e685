#include "noisyatom/noise.hpp"

#include <cmath>

namespace noisyatom {

namespace {

constexpr std::uint64_t kCollStream = 0x636f6c6c69736e31ULL;
constexpr std::uint64_t kPhaseStream = 0x7068617365646966ULL;
constexpr std::uint64_t kJumpStream = 0x6a756d7073747231ULL;

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ stream;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
    return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64(t);
}

NoiseSource::NoiseSource(std::uint64_t seed, double coll, double phase_noise)
    : coll_eng_(engine_for(seed, kCollStream)),
      phase_eng_(engine_for(seed, kPhaseStream)),
      jump_(engine_for(seed, kJumpStream)),
      coll_rate_(coll),
      phase_rate_(phase_noise) {}

NoisePath NoisePath::generate(std::uint64_t seed, const SystemParams& p, double dt, std::size_t n_steps) {
    NoiseSource src(seed, p.coll, p.phase_noise);
    NoisePath path;
    path.seed = seed;
    path.dt = dt;
    path.dW_coll.resize(n_steps);
    path.dW_phase.resize(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
        path.dW_coll[k] = src.coll(dt);
        path.dW_phase[k] = src.phase(dt);
    }
    return path;
}

}  // namespace noisyatom
