#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qrelax/checks/checks.hpp"
#include "qrelax/cli/config.hpp"

namespace qrelax::cli {

struct ScenarioResult {
    std::vector<checks::CheckResult> checks;
    std::vector<std::filesystem::path> files;  // relative to the output directory

    [[nodiscard]] bool passed() const;
};

/// Runs a validated scenario, writing its CSV files (plus SVG plots when
/// requested) and summary.txt into config.output.directory. Solver errors
/// propagate unchanged; nothing is written before the configuration's
/// preconditions have been re-checked.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// The summary.txt body: scenario, status, every check and every file.
void write_summary(std::ostream& out, const ScenarioConfig& config, const ScenarioResult& result);

}  // namespace qrelax::cli
