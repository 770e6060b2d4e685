#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "common/ordered_chunks.hpp"
#include "traj/propagator.hpp"

namespace noisyatom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWidth = 2.0 * kPi / PhaseHistogram::kBins;
constexpr std::size_t kTrajectoriesPerChunk = 16;

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

void accumulate_run(const detail::TrajectoryStepper& stepper, double theta, std::uint64_t seed, double t_discard,
                    PhaseStatistics& acc, bool keep_scatter) {
    stepper.run(
        seed,
        [&](std::size_t, const AtomState& s) {
            const DressedDecomposition d = to_dressed(s, theta);
            if (!d.valid()) {
                ++acc.n_invalid;
                return;
            }
            const double dphi = d.dphi();
            if (keep_scatter) acc.scatter.emplace_back(s.t, dphi);
            if (s.t >= t_discard) acc.histogram.add(dphi);
        },
        [](double, JumpKind) {});
}

void merge_stats(PhaseStatistics& acc, const PhaseStatistics& local) {
    acc.histogram.merge(local.histogram);
    acc.n_invalid += local.n_invalid;
    acc.scatter.insert(acc.scatter.end(), local.scatter.begin(), local.scatter.end());
}

}  // namespace

int PhaseHistogram::bin_of(double dphi) {
    const double x = wrap_angle(dphi);
    const int k = static_cast<int>(std::ceil((x + kPi) / kWidth)) - 1;
    return std::clamp(k, 0, kBins - 1);
}

double PhaseHistogram::bin_center(int k) { return -kPi + (k + 0.5) * kWidth; }

void PhaseHistogram::add(double dphi) {
    ++counts_[static_cast<std::size_t>(bin_of(dphi))];
    ++total_;
}

void PhaseHistogram::merge(const PhaseHistogram& o) {
    for (int k = 0; k < kBins; ++k) counts_[static_cast<std::size_t>(k)] += o.counts_[static_cast<std::size_t>(k)];
    total_ += o.total_;
}

double PhaseHistogram::max_min_ratio() const {
    const auto [mn, mx] = std::minmax_element(counts_.begin(), counts_.end());
    if (*mn == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(*mx) / static_cast<double>(*mn);
}

int PhaseHistogram::argmax() const {
    return static_cast<int>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
}

ModeCheck mode_near(const PhaseHistogram& h, double target) {
    ModeCheck m;
    m.target = target;
    int best = -1, lo_edge = -1, hi_edge = -1;
    double lo_off = 0.0, hi_off = 0.0;
    for (int k = 0; k < PhaseHistogram::kBins; ++k) {
        const double c = PhaseHistogram::bin_center(k);
        const double off = wrap_angle(c - target);
        if (std::abs(off) > kPi / 2.0) continue;
        const auto count = h.counts()[static_cast<std::size_t>(k)];
        if (best < 0 || count > h.counts()[static_cast<std::size_t>(best)]) best = k;
        if (lo_edge < 0 || off < lo_off) lo_edge = k, lo_off = off;
        if (hi_edge < 0 || off > hi_off) hi_edge = k, hi_off = off;
    }
    m.peak = h.counts()[static_cast<std::size_t>(best)];
    m.edge = std::max(h.counts()[static_cast<std::size_t>(lo_edge)], h.counts()[static_cast<std::size_t>(hi_edge)]);
    m.argmax_center = PhaseHistogram::bin_center(best);
    m.present = circular_distance(m.argmax_center, target) <= kPi / 8.0 &&
                static_cast<double>(m.peak) > 1.1 * static_cast<double>(m.edge);
    return m;
}

bool bimodal_zero_pi(const PhaseHistogram& h) { return mode_near(h, 0.0).present && mode_near(h, kPi).present; }

bool unimodal_at_pi(const PhaseHistogram& h) {
    const double c = PhaseHistogram::bin_center(h.argmax());
    return circular_distance(c, kPi) <= kPi / 8.0 && !mode_near(h, 0.0).present;
}

bool structureless(const PhaseHistogram& h, double max_ratio) { return h.max_min_ratio() < max_ratio; }

PhaseStatistics phase_statistics(const std::vector<TrajectoryRecord>& records, double t_discard) {
    PhaseStatistics out;
    out.t_discard = t_discard;
    for (std::size_t r = 0; r < records.size(); ++r) {
        const TrajectoryRecord& rec = records[r];
        if (r > 0 && rec.times != records.front().times)
            throw std::invalid_argument("phase_statistics: records must share the sample grid");
        for (std::size_t i = 0; i < rec.phase_obs.size(); ++i) {
            const PhaseObservation& ob = rec.phase_obs[i];
            if (!ob.valid) {
                ++out.n_invalid;
                continue;
            }
            if (r == 0) out.scatter.emplace_back(rec.times[i], ob.dphi);
            if (rec.times[i] >= t_discard) out.histogram.add(ob.dphi);
        }
    }
    return out;
}

PhaseStatistics phase_statistics_ensemble(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                          std::uint64_t master_seed, double t_discard) {
    const detail::TrajectoryStepper stepper(p, schedule);
    const double theta = mixing_angle(p);
    PhaseStatistics total;
    total.t_discard = t_discard;
    detail::ordered_chunks(
        n_traj, kTrajectoriesPerChunk, total, [] { return PhaseStatistics{}; },
        [&](PhaseStatistics& local, std::size_t i) {
            accumulate_run(stepper, theta, derive_seed(master_seed, i), t_discard, local, i == 0);
        },
        merge_stats);
    return total;
}

namespace reference {

PhaseStatistics phase_statistics_ensemble(const SystemParams& p, std::size_t n_traj, const SampleSchedule& schedule,
                                          std::uint64_t master_seed, double t_discard) {
    const detail::TrajectoryStepper stepper(p, schedule);
    const double theta = mixing_angle(p);
    PhaseStatistics total;
    total.t_discard = t_discard;
    for (std::size_t i = 0; i < n_traj; ++i)
        accumulate_run(stepper, theta, derive_seed(master_seed, i), t_discard, total, i == 0);
    return total;
}

}  // namespace reference

}  // namespace noisyatom
