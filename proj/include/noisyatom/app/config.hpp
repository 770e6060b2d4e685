#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "noisyatom/params.hpp"

namespace noisyatom::app {

enum class Mode {
    spectrum_analytic,
    spectrum_resolvent,
    spectrum_trajectory,
    sde_validate,
    trajectory_phases,
    cos_correlation,
    figure_preset,
    validate,
};

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

// Rates are ratios to the Rabi frequency, which is the internal unit.
// Zero for t_end, dt, stride, n_traj or n_paths selects the mode's default.
struct RunConfig {
    Mode mode = Mode::spectrum_resolvent;
    std::string preset;  // fig1 .. fig7, figure-preset mode only
    double gamma = 0.05;
    double coll = 5.0;
    double phase_noise = 0.0;
    double detuning = 0.0;
    double omega_lo = -10.0;
    double omega_hi = 10.0;
    std::size_t omega_points = 2001;
    double t_end = 0.0;
    double dt = 0.0;
    std::size_t stride = 0;
    std::size_t n_traj = 0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = "out";

    SystemParams params() const;
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

// "R,N" for [-R, R] or "lo:hi,N".
void parse_omega(const std::string& text, RunConfig& cfg);
std::string format_omega(const RunConfig& cfg);

// Flat "key = value" lines, '#' comments. Keys match the long flag names.
// Keys under "manifest." carry run metadata and are ignored on input.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string to_config_text(const RunConfig& cfg);

// Applies one key (flag name without dashes) to cfg; throws on unknown keys or bad values.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Shortest round-trip text for a double.
std::string format_double(double v);

}  // namespace noisyatom::app
