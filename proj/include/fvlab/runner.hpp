#pragma once

#include <string>
#include <vector>

#include "fvlab/config.hpp"
#include "fvlab/io.hpp"
#include "fvlab/scenarios.hpp"

namespace fvlab {

// Process exit codes shared by every entry point.
inline constexpr int kExitPass = 0;
inline constexpr int kExitDiagnosticFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverAbort = 3;

struct RunResult {
    int exit_code = kExitPass;
    std::string output_dir;
    std::vector<InequalityReport> reports;
};

/// Run one scenario, write fields.csv / diagnostics.json / traces.csv /
/// meta.json under the output directory, and grade the requested checks.
/// SOLVER_OUTPUT_DIR overrides config.output_dir when set.
RunResult run_scenario(const RunConfig& config);

struct StudyResult {
    std::vector<ConvergenceRow> rows;
    double lsq_order = 0.0;
    std::string output_dir;
};

/// Refinement study over n_list (ascending, >= 3 entries). Uses the exact
/// solution when the scenario has one, self-differences otherwise.
StudyResult convergence_study(const RunConfig& config, const std::vector<int>& n_list);

/// `fvlab run|study|check ...`; returns a process exit code.
int cli_main(const std::vector<std::string>& args);

} // namespace fvlab
