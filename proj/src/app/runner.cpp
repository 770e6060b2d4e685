#include "noisyatom/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <omp.h>

#include "noisyatom/app/checks.hpp"
#include "noisyatom/app/csv.hpp"
#include "noisyatom/chi_block.hpp"
#include "noisyatom/closed_form.hpp"
#include "noisyatom/errors.hpp"
#include "noisyatom/noise.hpp"
#include "noisyatom/sde.hpp"
#include "noisyatom/shape.hpp"
#include "noisyatom/trajectory.hpp"

namespace noisyatom::app {

namespace {

namespace fs = std::filesystem;

constexpr double kPresetGamma = 0.05;
constexpr double kSampleInterval = 0.1;  // time between stored samples, 1/Omega
constexpr double kRk4Floor = 1e-6;       // sde-validate: discretization allowance added to 3 se

std::string tag(double v) {
    std::string s = format_double(v);
    std::replace(s.begin(), s.end(), '.', 'p');
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

double t_steady(const SystemParams& p) { return p.gamma > 0.0 ? 10.0 / p.gamma : 0.0; }

class Session {
public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.out) { fs::create_directories(dir_); }

    const RunConfig& cfg() const { return cfg_; }

    void write(const std::string& name, const CsvTable& t) {
        t.write((dir_ / name).string());
        report_.outputs.push_back(name);
    }
    void write_text_file(const std::string& name, const std::string& text) {
        app::write_text((dir_ / name).string(), text);
        report_.outputs.push_back(name);
    }

    void note(const std::string& key, const std::string& value) { extra_ += "manifest." + key + " = " + value + "\n"; }

    void note_run(const std::string& label, const SystemParams& p, const std::string& rest) {
        note("run." + label, "Omega=1 gamma=" + format_double(p.gamma) + " Gamma=" + format_double(p.coll) +
                                 " L=" + format_double(p.phase_noise) + " Delta=" + format_double(p.detuning) + rest);
    }

    void summary(const std::string& line) { report_.summary += line + "\n"; }
    void fail() { report_.ok = false; }

    RunReport finish() {
        std::string m = "# noisyatom run manifest; rates and times in units of the Rabi frequency\n";
        m += to_config_text(cfg_);
        m += "manifest.version = " + std::string(kVersion) + "\n";
        m += extra_;
        for (const auto& o : report_.outputs) m += "manifest.output = " + o + "\n";
        app::write_text((dir_ / "manifest.txt").string(), m);
        report_.manifest_text = m;
        return report_;
    }

private:
    static constexpr const char* kVersion = "0.1.0";
    RunConfig cfg_;
    fs::path dir_;
    std::string extra_;
    RunReport report_;
};

double dt_for(const RunConfig& cfg, const SystemParams& p) { return cfg.dt > 0.0 ? cfg.dt : max_step(p); }

std::size_t stride_for(const RunConfig& cfg, double dt) {
    if (cfg.stride > 0) return cfg.stride;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(kSampleInterval / dt)));
}

std::string sched_note(double dt, double t_end, std::size_t stride) {
    return " dt=" + format_double(dt) + " t_end=" + format_double(t_end) + " stride=" + std::to_string(stride);
}

CsvTable spectrum_table(const SpectrumGrid& s) {
    const bool err = !s.errors.empty();
    std::vector<std::string> h{"omega_over_Omega", "S"};
    if (err) h.push_back("S_err");
    h.push_back("S_peak_normalized");
    CsvTable t(h);
    const std::vector<double> norm = s.peak_normalized();
    for (std::size_t i = 0; i < s.omegas.size(); ++i) {
        std::vector<double> row{s.omegas[i], s.values[i]};
        if (err) row.push_back(s.errors[i]);
        row.push_back(norm[i]);
        t.add_row(row);
    }
    return t;
}

void write_spectrum(Session& ss, const std::string& name, const SpectrumGrid& s) {
    ss.write(name, spectrum_table(s));
    ss.note("elastic_weight." + name, format_double(s.elastic_weight));
}

std::vector<double> omega_grid(const RunConfig& cfg) { return uniform_grid(cfg.omega_lo, cfg.omega_hi, cfg.omega_points); }

void analytic_spectrum(Session& ss, const std::string& prefix, const SystemParams& p) {
    ss.note_run(prefix + "analytic", p, " omega=" + format_omega(ss.cfg()));
    write_spectrum(ss, prefix + "spectrum_analytic.csv", spectrum_closed_form(p, omega_grid(ss.cfg())));
}

void resolvent_spectrum(Session& ss, const std::string& prefix, const SystemParams& p) {
    ss.note_run(prefix + "resolvent", p, " omega=" + format_omega(ss.cfg()));
    write_spectrum(ss, prefix + "spectrum_resolvent.csv", spectrum_resolvent(p, omega_grid(ss.cfg())));
}

void trajectory_spectrum(Session& ss, const SystemParams& p) {
    const RunConfig& cfg = ss.cfg();
    TrajectorySpectrumOptions opt;
    opt.n_traj = cfg.n_traj ? cfg.n_traj : 500000;
    opt.dt = dt_for(cfg, p);
    opt.seed = cfg.seed;
    if (cfg.stride) opt.stride = cfg.stride;
    const double t_ss = t_steady(p);
    opt.t_discard = t_ss;
    opt.t_average = cfg.t_end > 0.0 ? cfg.t_end : t_ss;
    const TrajectorySteadyState st = estimate_steady_state(p, opt);
    ss.note_run("trajectory", p,
                " omega=" + format_omega(cfg) + " dt=" + format_double(opt.dt) + " t_discard=" + format_double(t_ss) +
                    " t_average=" + format_double(opt.t_average) + " stride=" + std::to_string(opt.stride) +
                    " n_traj=" + std::to_string(opt.n_traj) + " seed=" + std::to_string(opt.seed));
    ss.note("chi1", format_double(st.chi1.real()) + " " + format_double(st.chi1.imag()));
    ss.note("chi4", format_double(st.chi4));
    write_spectrum(ss, "spectrum_trajectory.csv", spectrum_from_steady_state(p, omega_grid(cfg), st));
}

void sde_validate(Session& ss, const SystemParams& p) {
    const RunConfig& cfg = ss.cfg();
    const std::size_t n_paths = cfg.n_paths ? cfg.n_paths : 10000;
    if (n_paths < 2) throw std::invalid_argument("sde-validate needs n-paths >= 2 for standard errors");
    const double dt = dt_for(cfg, p);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : (p.gamma > 0.0 ? std::min(10.0 / p.gamma, 1000.0) : 100.0);
    std::vector<double> times;
    for (double f : {0.05, 0.1, 0.2, 0.5, 1.0}) times.push_back(dt * std::round(f * t_end / dt));
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.front() <= 0.0) times.erase(times.begin());
    if (times.empty()) throw std::invalid_argument("sde-validate: t-end shorter than one step");

    const SampleSchedule sched = SampleSchedule::at_times(dt, times);
    const EnsembleSeries s =
        ensemble_average(p, n_paths, {Observable::rho_ee, Observable::re_chi1, Observable::im_chi1}, sched, cfg.seed);
    ss.note_run("sde", p, " dt=" + format_double(dt) + " n_paths=" + std::to_string(n_paths) + " seed=" +
                              std::to_string(cfg.seed) + " tolerance=3se+" + format_double(kRk4Floor));

    CsvTable t({"t_over_inv_Omega", "rho_ee", "rho_ee_err", "rho_ee_ode", "re_chi1", "re_chi1_err", "re_chi1_ode",
                "im_chi1", "im_chi1_err", "im_chi1_ode", "agree"});
    const ChiBlock start = make_block(ChiKind::primed, p, DensityMatrix::ground());
    std::size_t disagreements = 0;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const ChiBlock b = evolve(start, s.times[k]);
        const double ref[] = {b.vec(3).real(), b.vec(0).real(), b.vec(0).imag()};
        const Observable obs[] = {Observable::rho_ee, Observable::re_chi1, Observable::im_chi1};
        std::vector<double> row{s.times[k]};
        bool agree = true;
        for (int j = 0; j < 3; ++j) {
            const double m = s.mean(obs[j], k), se = s.stderr_mean(obs[j], k);
            agree = agree && std::abs(m - ref[j]) <= 3.0 * se + kRk4Floor;
            row.insert(row.end(), {m, se, ref[j]});
        }
        row.push_back(agree ? 1.0 : 0.0);
        if (!agree && s.times[k] > 0.0) ++disagreements;
        t.add_row(row);
    }
    ss.write("sde_validate.csv", t);
    ss.note("agreement", disagreements == 0 ? "true" : "false");
    if (disagreements) {
        ss.fail();
        ss.summary("sde-validate: " + std::to_string(disagreements) + " checkpoint(s) outside 3 standard errors");
    } else {
        ss.summary("sde-validate: agreement at all " + std::to_string(times.size()) + " checkpoints");
    }
}

CsvTable phases_table(const TrajectoryRecord& rec) {
    CsvTable t({"t_over_inv_Omega", "dphi", "sphi", "valid"});
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const PhaseObservation& o = rec.phase_obs[i];
        t.add_row({rec.times[i], o.valid ? o.dphi : std::nan(""), o.valid ? o.sphi : std::nan(""), o.valid ? 1.0 : 0.0});
    }
    return t;
}

CsvTable jumps_table(const TrajectoryRecord& rec) {
    // kind: 0 collision, 1 spontaneous emission
    CsvTable t({"t_over_inv_Omega", "kind"});
    for (const Jump& j : rec.jumps) t.add_row({j.t, j.kind == JumpKind::spontaneous ? 1.0 : 0.0});
    return t;
}

void single_trajectory(Session& ss, const std::string& prefix, const SystemParams& p, double default_t_end) {
    const RunConfig& cfg = ss.cfg();
    const double dt = dt_for(cfg, p);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : default_t_end;
    const std::size_t stride = stride_for(cfg, dt);
    const std::uint64_t seed = derive_seed(cfg.seed, 0);
    const TrajectoryRecord rec = run_trajectory(p, seed, SampleSchedule::uniform(dt, t_end, stride));
    ss.note_run(prefix + "trajectory", p,
                sched_note(dt, t_end, stride) + " seed=derive_seed(" + std::to_string(cfg.seed) + ",0)");
    ss.write(prefix + "phases.csv", phases_table(rec));
    ss.write(prefix + "jumps.csv", jumps_table(rec));
}

void phase_histogram(Session& ss, const std::string& prefix, const SystemParams& p) {
    const RunConfig& cfg = ss.cfg();
    const double dt = dt_for(cfg, p);
    const double t_ss = t_steady(p);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : t_ss + 2000.0;
    const double t_discard = t_ss < t_end ? t_ss : 0.0;
    const std::size_t stride = stride_for(cfg, dt);
    const std::size_t n_traj = cfg.n_traj ? cfg.n_traj : 200;

    single_trajectory(ss, prefix, p, t_end);
    const PhaseStatistics st =
        phase_statistics_ensemble(p, n_traj, SampleSchedule::uniform(dt, t_end, stride), cfg.seed, t_discard);
    ss.note_run(prefix + "histogram", p,
                sched_note(dt, t_end, stride) + " t_discard=" + format_double(t_discard) + " n_traj=" +
                    std::to_string(n_traj) + " seed=" + std::to_string(cfg.seed) + " bins=64");

    const PhaseHistogram& h = st.histogram;
    CsvTable t({"dphi_center", "count", "fraction"});
    for (int b = 0; b < PhaseHistogram::kBins; ++b)
        t.add_row({PhaseHistogram::bin_center(b), static_cast<double>(h.counts()[b]),
                   h.total() ? static_cast<double>(h.counts()[b]) / static_cast<double>(h.total()) : 0.0});
    ss.write(prefix + "dphi_histogram.csv", t);
    ss.note(prefix + "histogram.max_min_ratio", format_double(h.max_min_ratio()));
    ss.note(prefix + "histogram.argmax_center", format_double(PhaseHistogram::bin_center(h.argmax())));
    ss.note(prefix + "histogram.bimodal_zero_pi", bimodal_zero_pi(h) ? "true" : "false");
    ss.note(prefix + "histogram.unimodal_at_pi", unimodal_at_pi(h) ? "true" : "false");
    ss.note(prefix + "histogram.structureless", structureless(h) ? "true" : "false");
}

void cos_corr(Session& ss, const std::string& prefix, const SystemParams& p) {
    const RunConfig& cfg = ss.cfg();
    const double dt = dt_for(cfg, p);
    const double t_ss = t_steady(p);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : t_ss + 20000.0;
    const double t_discard = t_ss < t_end ? t_ss : 0.0;
    const std::size_t stride = stride_for(cfg, dt);
    const double h = dt * static_cast<double>(stride);
    const std::uint64_t seed = derive_seed(cfg.seed, 0);
    const TrajectoryRecord rec = run_trajectory(p, seed, SampleSchedule::uniform(dt, t_end, stride));

    const auto n_window = static_cast<std::size_t>((t_end - t_discard) / h);
    const std::size_t n_lags = std::min<std::size_t>(201, n_window / 2);
    if (n_lags < 2) throw std::invalid_argument("cos-correlation: record too short for any lag");
    std::vector<double> taus;
    for (std::size_t i = 0; i < n_lags; ++i) taus.push_back(h * static_cast<double>(i));
    const PhaseCorrelation c = cos_correlation(rec, taus, t_discard);

    CsvTable t({"tau_over_inv_Omega", "C_cos"});
    for (std::size_t i = 0; i < taus.size(); ++i) t.add_row({taus[i], c.values[i]});
    ss.write(prefix + "cos_correlation.csv", t);
    ss.note_run(prefix + "cos_correlation", p,
                sched_note(dt, t_end, stride) + " t_discard=" + format_double(t_discard) + " seed=derive_seed(" +
                    std::to_string(cfg.seed) + ",0)");
    ss.note(prefix + "cos_correlation.samples", std::to_string(c.n_samples));
}

SystemParams preset_params(double coll, double L) { return SystemParams(1.0, 0.0, kPresetGamma, coll, L); }

void figure_preset(Session& ss) {
    const std::string& f = ss.cfg().preset;
    if (f == "fig1") {
        for (double L : {0.0, 0.2, 1.0, 2.0}) {
            const std::string prefix = "fig1_L" + tag(L) + "_";
            analytic_spectrum(ss, prefix, preset_params(5.0, L));
            resolvent_spectrum(ss, prefix, preset_params(5.0, L));
        }
    } else if (f == "fig2") {
        phase_histogram(ss, "fig2_", preset_params(0.0, 0.0));
    } else if (f == "fig3") {
        phase_histogram(ss, "fig3_", preset_params(5.0, 0.0));
    } else if (f == "fig4") {
        phase_histogram(ss, "fig4_", preset_params(0.0, 5.0));
        phase_histogram(ss, "fig4_both_", preset_params(5.0, 0.5));
    } else if (f == "fig5") {
        const double settings[][2] = {{5.0, 0.0}, {0.0, 5.0}, {5.0, 5.0}};
        for (const auto& s : settings)
            cos_corr(ss, "fig5_Gamma" + tag(s[0]) + "_L" + tag(s[1]) + "_", preset_params(s[0], s[1]));
    } else if (f == "fig6") {
        single_trajectory(ss, "fig6_", preset_params(5.0, 0.0), 400.0);
    } else if (f == "fig7") {
        single_trajectory(ss, "fig7_", preset_params(5.0, 0.05), 400.0);
    }
    if (f != "fig1") ss.note("preset_note", "preset fixes gamma, Gamma, L, Delta; see manifest.run entries");
}

void validate(Session& ss) {
    const RunConfig& cfg = ss.cfg();
    SuiteOptions opt;
    opt.seed = cfg.seed;
    if (cfg.n_paths) opt.n_paths = cfg.n_paths;
    if (cfg.n_traj) opt.n_traj = cfg.n_traj;
    opt.artifact_dir = (fs::path(cfg.out) / "artifacts").string();
    const auto results = validate_suite(opt);
    for (const auto& r : results) {
        ss.summary(format_report(r));
        if (!r.pass()) ss.fail();
    }
    ss.write_text_file("validation_report.json", report_json(results));
    ss.note("validation.n_paths", std::to_string(opt.n_paths));
    ss.note("validation.n_traj", std::to_string(opt.n_traj));
}

}  // namespace

RunReport run(const RunConfig& cfg) {
    cfg.validate();
    Session ss(cfg);
    const SystemParams p = cfg.params();
    switch (cfg.mode) {
        case Mode::spectrum_analytic: analytic_spectrum(ss, "", p); break;
        case Mode::spectrum_resolvent: resolvent_spectrum(ss, "", p); break;
        case Mode::spectrum_trajectory: trajectory_spectrum(ss, p); break;
        case Mode::sde_validate: sde_validate(ss, p); break;
        case Mode::trajectory_phases: phase_histogram(ss, "", p); break;
        case Mode::cos_correlation: cos_corr(ss, "", p); break;
        case Mode::figure_preset: figure_preset(ss); break;
        case Mode::validate: validate(ss); break;
    }
    return ss.finish();
}

std::string error_record(const std::string& kind, const std::string& message, const std::string& mode) {
    return nlohmann::json{{"error", kind}, {"message", message}, {"mode", mode}}.dump();
}

int run_and_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string kind;
    std::string message;
    int code = 0;
    try {
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
        const RunReport r = run(cfg);
        out << r.summary;
        out << "wrote " << r.outputs.size() << " file(s) and manifest.txt to " << cfg.out << "\n";
        return r.ok ? 0 : 1;
    } catch (const NumericalError& e) {
        kind = e.kind();
        message = e.what();
        code = 3;
    } catch (const std::invalid_argument& e) {
        kind = "invalid-config";
        message = e.what();
        code = 2;
    } catch (const std::exception& e) {
        kind = "runtime-error";
        message = e.what();
        code = 4;
    }
    const std::string rec = error_record(kind, message, to_string(cfg.mode));
    err << rec << "\n";
    try {
        write_text((fs::path(cfg.out) / "error.json").string(), rec + "\n");
    } catch (...) {
        // the record on stderr is authoritative
    }
    return code;
}

}  // namespace noisyatom::app
