#pragma once

#include "lobatto/pendulum.hpp"
#include "lobatto/phase.hpp"
#include "lobatto/potential.hpp"

namespace lobatto {

/// Implicit midpoint rule
///   (q+ - q)/h = (p + p+)/(2m),   (p+ - p)/h = -V'((q + q+)/2).
struct MidpointParams {
  double step = 0.02;
  Potential potential = Potential::harmonic(1.0, 1.0);
  NewtonConfig solver{};

  void validate() const;
};

/// One implicit-midpoint step. The scalar equation for q+ is solved by Newton with
/// the scaled residual |G| / max(1, |q|); throws SolverError on failure.
PhasePoint step_midpoint(const PhasePoint& point, const MidpointParams& params);

}  // namespace lobatto
