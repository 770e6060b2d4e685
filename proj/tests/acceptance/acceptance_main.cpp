// Acceptance battery: one [PASS]/[FAIL] line per criterion, details indented below it.
// Tolerances and budgets are fixed in src/app/checks.cpp.
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "noisyatom/app/checks.hpp"

int main(int argc, char** argv) {
    CLI::App app{"noisyatom acceptance criteria"};
    std::vector<int> ids;
    noisyatom::app::SuiteOptions opt;
    app.add_option("criteria", ids, "criterion numbers to run (default: all)")->check(CLI::Range(1, noisyatom::app::kCriteria));
    app.add_option("--artifacts", opt.artifact_dir, "directory for the CSVs of criteria 5-9");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--n-traj", opt.n_traj, "trajectories for criterion 6");
    app.add_option("--n-paths", opt.n_paths, "noise paths for criterion 5");
    app.add_flag("--corrupt-npp", opt.corrupt_npp, "mutation hook: perturb one N'' entry in the resolvent route");
    CLI11_PARSE(app, argc, argv);

    if (ids.empty())
        for (int i = 1; i <= noisyatom::app::kCriteria; ++i) ids.push_back(i);
    bool all = true;
    for (int id : ids) {
        const auto r = noisyatom::app::run_criterion(id, opt);
        std::cout << noisyatom::app::format_report(r) << std::flush;
        all = all && r.pass();
    }
    return all ? 0 : 1;
}
