#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noisyatom/app/config.hpp"

namespace noisyatom::app {

struct RunReport {
    std::vector<std::string> outputs;  // file names inside cfg.out
    std::string manifest_text;
    bool ok = true;  // false when a validating mode reports disagreement
    std::string summary;
};

// Writes CSVs and manifest.txt into cfg.out.
RunReport run(const RunConfig& cfg);

// JSON object {"error": kind, "message": ..., "mode": ...} on one line.
std::string error_record(const std::string& kind, const std::string& message, const std::string& mode);

// Exit codes: 0 success, 1 validation disagreement or failed checks, 2 invalid configuration,
// 3 numerical error, 4 any other failure.
int run_and_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace noisyatom::app
