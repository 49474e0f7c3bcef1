#pragma once

#include <cstddef>
#include <string_view>

#include "lobatto/analysis.hpp"
#include "lobatto/pendulum.hpp"

namespace lobatto {

enum class System { harmonic, pendulum };
enum class Scheme { lobatto, midpoint };

std::string_view to_string(System system);
std::string_view to_string(Scheme scheme);

/// Fixed-step run of one scheme on one system, seeded with the exact solution at t = 0.
/// `amplitude` is A for the oscillator and the release angle q0 for the pendulum.
struct SimulationSpec {
  System system = System::harmonic;
  Scheme scheme = Scheme::lobatto;
  double mass = 1.0;
  double omega = 1.0;
  double amplitude = 1.0;
  double step = 0.1;
  std::size_t steps = 10;
  NewtonConfig newton{};

  /// Period of the exact solution: 2 pi / w or 4 K(k) / w.
  double exact_period() const;
};

/// Fills `out` node by node, so a SolverError leaves the completed prefix in place.
void simulate_into(const SimulationSpec& spec, TrajectoryRecord& out);

TrajectoryRecord simulate(const SimulationSpec& spec);

}  // namespace lobatto
