#include "lobatto/midpoint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lobatto/errors.hpp"

namespace lobatto {

void MidpointParams::validate() const {
  if (step == 0.0 || !std::isfinite(step)) throw DomainError("step must be finite and non-zero");
  solver.validate();
}

PhasePoint step_midpoint(const PhasePoint& point, const MidpointParams& params) {
  params.validate();
  const double h = params.step;
  const double m = params.potential.mass();
  const Potential& v = params.potential;

  // Eliminating p+ leaves G(Q) = Q - q - h p/m + h^2/(2m) V'((q+Q)/2) = 0.
  const double drift = point.q + h * point.p / m;
  const double scale = std::max(1.0, std::abs(point.q));
  double next_q = drift;
  std::size_t iterations = 0;
  for (;;) {
    const double mid = 0.5 * (point.q + next_q);
    const double g = next_q - drift + h * h / (2.0 * m) * v.first(mid);
    const double norm = std::abs(g) / scale;
    if (!std::isfinite(norm)) throw SolverError("midpoint residual is not finite", iterations, norm);
    if (norm <= params.solver.tolerance) break;
    if (iterations >= params.solver.max_iterations) {
      throw SolverError("midpoint Newton did not converge in " +
                            std::to_string(params.solver.max_iterations) + " iterations",
                        iterations, norm);
    }
    const double slope = 1.0 + h * h / (4.0 * m) * v.second(mid);
    if (slope == 0.0) throw SingularJacobianError("singular midpoint Jacobian", iterations, norm);
    const double delta = -g / slope;
    if (!(std::abs(delta) <= params.solver.max_step_norm)) {
      throw SolverError("midpoint update exceeded the divergence guard", iterations, norm);
    }
    next_q += delta;
    ++iterations;
  }
  const double mid = 0.5 * (point.q + next_q);
  return {point.p - h * v.first(mid), next_q};
}

}  // namespace lobatto
