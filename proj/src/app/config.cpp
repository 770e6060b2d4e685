#include "noisyatom/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace noisyatom::app {

namespace {

struct ModeName {
    Mode mode;
    const char* name;
};

constexpr ModeName kModes[] = {
    {Mode::spectrum_analytic, "spectrum-analytic"},
    {Mode::spectrum_resolvent, "spectrum-resolvent"},
    {Mode::spectrum_trajectory, "spectrum-trajectory"},
    {Mode::sde_validate, "sde-validate"},
    {Mode::trajectory_phases, "trajectory-phases"},
    {Mode::cos_correlation, "cos-correlation"},
    {Mode::figure_preset, "figure-preset"},
    {Mode::validate, "validate"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out))
        throw std::invalid_argument("key '" + key + "': not a finite number: '" + v + "'");
    return out;
}

template <class T>
T to_unsigned(const std::string& key, const std::string& v) {
    T out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("key '" + key + "': not a non-negative integer: '" + v + "'");
    return out;
}

}  // namespace

const char* to_string(Mode m) {
    for (const auto& e : kModes)
        if (e.mode == m) return e.name;
    return "unknown";
}

Mode parse_mode(const std::string& s) {
    for (const auto& e : kModes)
        if (s == e.name) return e.mode;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

SystemParams RunConfig::params() const { return SystemParams(1.0, detuning, gamma, coll, phase_noise); }

void RunConfig::validate() const {
    (void)params();
    if (!(omega_hi > omega_lo)) throw std::invalid_argument("omega range must satisfy lo < hi");
    if (omega_points < 2) throw std::invalid_argument("omega needs at least 2 points");
    if (t_end < 0.0) throw std::invalid_argument("t-end must be >= 0");
    if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (mode == Mode::figure_preset) {
        static const char* names[] = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
        bool ok = false;
        for (const char* n : names) ok = ok || preset == n;
        if (!ok) throw std::invalid_argument("figure-preset needs --preset fig1..fig7, got '" + preset + "'");
    }
    if (out.empty()) throw std::invalid_argument("out must not be empty");
}

void parse_omega(const std::string& text, RunConfig& cfg) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("omega: expected 'R,N' or 'lo:hi,N', got '" + text + "'");
    const std::string range = trim(text.substr(0, comma));
    const auto n = to_unsigned<std::size_t>("omega", trim(text.substr(comma + 1)));
    const auto colon = range.find(':');
    if (colon == std::string::npos) {
        const double r = to_double("omega", range);
        cfg.omega_lo = -r;
        cfg.omega_hi = r;
    } else {
        cfg.omega_lo = to_double("omega", trim(range.substr(0, colon)));
        cfg.omega_hi = to_double("omega", trim(range.substr(colon + 1)));
    }
    cfg.omega_points = n;
}

std::string format_omega(const RunConfig& cfg) {
    return format_double(cfg.omega_lo) + ":" + format_double(cfg.omega_hi) + "," + std::to_string(cfg.omega_points);
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "mode") cfg.mode = parse_mode(v);
    else if (key == "preset") cfg.preset = v;
    else if (key == "omega") parse_omega(v, cfg);
    else if (key == "gamma") cfg.gamma = to_double(key, v);
    else if (key == "Gamma") cfg.coll = to_double(key, v);
    else if (key == "L") cfg.phase_noise = to_double(key, v);
    else if (key == "Delta") cfg.detuning = to_double(key, v);
    else if (key == "t-end") cfg.t_end = to_double(key, v);
    else if (key == "dt") cfg.dt = to_double(key, v);
    else if (key == "stride") cfg.stride = to_unsigned<std::size_t>(key, v);
    else if (key == "n-traj") cfg.n_traj = to_unsigned<std::size_t>(key, v);
    else if (key == "n-paths") cfg.n_paths = to_unsigned<std::size_t>(key, v);
    else if (key == "seed") cfg.seed = to_unsigned<std::uint64_t>(key, v);
    else if (key == "threads") cfg.threads = static_cast<int>(to_unsigned<unsigned>(key, v));
    else if (key == "out") cfg.out = v;
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        if (key.rfind("manifest.", 0) == 0) continue;
        set_key(cfg, key, t.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string to_config_text(const RunConfig& cfg) {
    std::string s;
    auto put = [&s](const char* k, const std::string& v) {
        s += k;
        s += " = ";
        s += v;
        s += '\n';
    };
    put("mode", to_string(cfg.mode));
    if (!cfg.preset.empty()) put("preset", cfg.preset);
    put("omega", format_omega(cfg));
    put("gamma", format_double(cfg.gamma));
    put("Gamma", format_double(cfg.coll));
    put("L", format_double(cfg.phase_noise));
    put("Delta", format_double(cfg.detuning));
    put("t-end", format_double(cfg.t_end));
    put("dt", format_double(cfg.dt));
    put("stride", std::to_string(cfg.stride));
    put("n-traj", std::to_string(cfg.n_traj));
    put("n-paths", std::to_string(cfg.n_paths));
    put("seed", std::to_string(cfg.seed));
    put("threads", std::to_string(cfg.threads));
    put("out", cfg.out);
    return s;
}

}  // namespace noisyatom::app
