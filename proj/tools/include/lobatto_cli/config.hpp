#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lobatto/pendulum.hpp"
#include "lobatto/simulation.hpp"

namespace lobatto::cli {

enum class Command { trajectory, convergence, drift, stability };

/// Everything one CLI invocation needs. Optional fields fall back to per-system defaults.
struct ExperimentConfig {
  Command command = Command::trajectory;
  System system = System::harmonic;
  Scheme scheme = Scheme::lobatto;
  double mass = 1.0;
  double omega = 0.0;  // 0 selects the default 2 pi
  std::optional<double> amplitude;
  std::optional<std::size_t> meshes;
  std::size_t periods = 1;
  /// Empty writes to stdout.
  std::string out;
  std::size_t levels = 3;
  /// Overrides period / meshes when set.
  std::optional<double> step;
  double hw_min = 0.01;
  double hw_max = 3.5;
  double hw_step = 0.01;
  std::size_t scan_steps = 2000;
  NewtonConfig newton{};

  double omega_or_default() const;
  /// A = pi/2 for the oscillator, q0 = pi/2 for the pendulum.
  double amplitude_or_default() const;
  /// 10 meshes per period for the oscillator, 50 for the pendulum.
  std::size_t meshes_or_default() const;
  /// Exact period of the configured system.
  double period() const;
  /// Step size: `step` if given, else period / meshes.
  double step_size() const;

  SimulationSpec simulation(std::size_t meshes, std::size_t periods) const;
};

/// Invalid command line or config file. `position` is the argument index (0 = the
/// subcommand) for command-line tokens and the 1-based line number for file entries.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string token, std::size_t position,
              bool from_file = false);

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }
  bool from_file() const noexcept { return from_file_; }

 private:
  std::string token_;
  std::size_t position_;
  bool from_file_;
};

/// Parses `<subcommand> [--key value | --key=value]...`. Values from `--config <file>`
/// (flat key=value lines, '#' comments) are applied first; flags override them.
/// Unknown keys and invalid values throw ConfigError.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// Validates cross-field invariants (N >= 2, periods >= 1, h w < sqrt(10) for harmonic
/// Lobatto, ...). Throws ConfigError naming the offending key.
void validate(const ExperimentConfig& config);

std::string usage();

}  // namespace lobatto::cli
