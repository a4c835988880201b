#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvlab {

/// Aggregated configuration problems, one message per offending key.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

  private:
    std::vector<std::string> issues_;
};

struct RunConfig {
    std::string scenario;
    int n_cells = 200;
    double T = -1.0;         // < 0 picks the scenario default
    double cfl = 0.5;
    int output_count = 11;
    long max_steps = 2000000;
    std::string scheme;      // empty picks the scenario default
    double eps = 0.0;
    bool dp_enabled = false; // implied by the scenario; mismatches are errors
    bool dp_flag_set = false;
    std::string elliptic_backend = "green";
    std::vector<std::string> diagnostics;           // empty = all applicable
    std::map<std::string, double> tolerances;       // per-check overrides
    std::string output_dir = "out";
    std::vector<std::string> output_formats = {"csv", "json"};
};

/// Parse and validate a TOML run file. Collects every problem before
/// throwing ConfigError; unknown names list the valid alternatives.
RunConfig parse_config(const std::string& path);

/// Validate a config assembled in code (same rules as parse_config).
void validate_config(RunConfig& config);

} // namespace fvlab
