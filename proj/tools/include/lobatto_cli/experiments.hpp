#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lobatto_cli/config.hpp"

namespace lobatto::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

/// Runs one configured experiment. CSV goes to config.out (or `data` when empty),
/// human-readable summaries to `log`. Returns the process exit code.
int run(const ExperimentConfig& config, std::ostream& data, std::ostream& log);

/// parse_config + run, mapping ConfigError to exit code 2.
int run_cli(const std::vector<std::string>& args, std::ostream& data, std::ostream& log);

}  // namespace lobatto::cli
