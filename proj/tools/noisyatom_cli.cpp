// Command-line front end: flags override values loaded from --config.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noisyatom/app/config.hpp"
#include "noisyatom/app/runner.hpp"

namespace na = noisyatom::app;

int main(int argc, char** argv) {
    CLI::App app{"noisyatom: resonance fluorescence of a two-level atom under collisional and laser phase noise"};
    app.set_version_flag("--version", "noisyatom 0.1.0");

    std::string config_path;
    std::optional<std::string> mode, preset, omega, out;
    std::optional<double> gamma, coll, phase, detuning, dt, t_end;
    std::optional<std::size_t> n_traj, n_paths, stride;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool validate = false;

    app.add_option("--config", config_path, "flat key = value file with the same keys as the flags");
    app.add_option("--mode", mode,
                   "spectrum-analytic | spectrum-resolvent | spectrum-trajectory | sde-validate | "
                   "trajectory-phases | cos-correlation | figure-preset | validate");
    app.add_option("--preset", preset, "fig1 .. fig7 (figure-preset mode)");
    app.add_option("--omega", omega, "frequency grid 'R,N' for [-R,R] or 'lo:hi,N', units of Omega");
    app.add_option("--gamma", gamma, "natural linewidth gamma/Omega");
    app.add_option("--Gamma", coll, "collisional noise Gamma/Omega");
    app.add_option("--L", phase, "laser phase diffusion L/Omega");
    app.add_option("--Delta", detuning, "detuning Delta/Omega");
    app.add_option("--n-traj", n_traj, "number of trajectories (0: mode default)");
    app.add_option("--n-paths", n_paths, "number of SDE noise paths (0: mode default)");
    app.add_option("--dt", dt, "time step in 1/Omega (0: 0.01 / max rate)");
    app.add_option("--t-end", t_end, "simulated time in 1/Omega (0: mode default)");
    app.add_option("--stride", stride, "steps between stored samples (0: 0.1/Omega spacing)");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
    app.add_option("--out", out, "output directory");
    app.add_flag("--validate", validate, "run the acceptance battery (same as --mode validate)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << na::error_record("invalid-config", e.what(), "") << "\n";
        return 2;
    }

    na::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = na::load_config(config_path);
        auto set = [&cfg](const char* key, const std::string& v) { na::set_key(cfg, key, v); };
        if (mode) set("mode", *mode);
        if (preset) set("preset", *preset);
        if (omega) set("omega", *omega);
        if (gamma) cfg.gamma = *gamma;
        if (coll) cfg.coll = *coll;
        if (phase) cfg.phase_noise = *phase;
        if (detuning) cfg.detuning = *detuning;
        if (n_traj) cfg.n_traj = *n_traj;
        if (n_paths) cfg.n_paths = *n_paths;
        if (dt) cfg.dt = *dt;
        if (t_end) cfg.t_end = *t_end;
        if (stride) cfg.stride = *stride;
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        if (out) cfg.out = *out;
        if (validate) cfg.mode = na::Mode::validate;
        if (preset && !mode) cfg.mode = na::Mode::figure_preset;
    } catch (const std::exception& e) {
        std::cerr << na::error_record("invalid-config", e.what(), "") << "\n";
        return 2;
    }
    return na::run_and_report(cfg, std::cout, std::cerr);
}
