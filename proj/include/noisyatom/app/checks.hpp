#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace noisyatom::app {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
    bool informational = false;  // printed, never gates the verdict
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckLine> lines;
    double seconds = 0.0;
    double budget_seconds = 0.0;

    bool pass() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t n_paths = 10000;  // criterion 5
    std::size_t n_traj = 50000;   // criterion 6
    std::string artifact_dir;     // CSVs of criteria 5-9; empty selects a temporary directory
    bool corrupt_npp = false;     // mutation hook: perturbs one N'' entry of the resolvent route
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const SuiteOptions& opt);

std::vector<CriterionResult> validate_suite(const SuiteOptions& opt, const std::vector<int>& ids = {});

// One "[PASS]/[FAIL] criterion N ..." line per criterion followed by indented detail lines.
std::string format_report(const CriterionResult& r);

std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace noisyatom::app
