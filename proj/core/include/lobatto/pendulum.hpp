#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "lobatto/phase.hpp"
#include "lobatto/potential.hpp"

namespace lobatto {

/// Newton controls for the implicit schemes.
struct NewtonConfig {
  /// Bound on the scaled infinity norm of the residual.
  double tolerance = 1e-13;
  std::size_t max_iterations = 20;
  /// Abort when a single Newton update exceeds this infinity norm.
  double max_step_norm = 1e3;

  void validate() const;
};

/// Discretisation of a one-degree-of-freedom Lagrangian m qdot^2 / 2 - V(q).
/// Mass and frequency live in the potential. Negative steps run backwards.
struct NonlinearParams {
  double step = 0.02;
  Potential potential = Potential::pendulum(1.0, 1.0);

  double mass() const noexcept { return potential.mass(); }
  double omega() const noexcept { return potential.omega(); }
  void validate() const;
};

/// Newton unknowns of one step, in the order (q_xi, q_{1-xi}, p_next, q_next).
struct StepUnknowns {
  double q_xi = 0.0;
  double q_one_minus_xi = 0.0;
  double p_next = 0.0;
  double q_next = 0.0;

  Eigen::Vector4d vector() const { return {q_xi, q_one_minus_xi, p_next, q_next}; }
  static StepUnknowns from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

double discrete_lagrangian_nl(const ElementState& element, const NonlinearParams& params);

/// Analytic gradient of discrete_lagrangian_nl with respect to (q_l, q_xi, q_{1-xi}, q_r).
std::array<double, 4> discrete_lagrangian_nl_gradient(const ElementState& element,
                                                      const NonlinearParams& params);

/// Left minus right side of the two interior equations
///   q_xi - h^2/(30m) (V'_{1-xi} + 2 V'_xi) = (5+sqrt5)/10 q_l + (5-sqrt5)/10 q_r
/// and its mirror. q_r is taken from unknowns.q_next.
std::array<double, 2> internal_equations_residual(const StepUnknowns& unknowns, double q_left,
                                                  const NonlinearParams& params);

/// Momentum and state update residuals of the discrete Hamiltonian dynamics.
std::array<double, 2> dynamics_residual(const StepUnknowns& unknowns, const PhasePoint& point,
                                        const NonlinearParams& params);

/// Full F_L, rows ordered (internal xi, internal 1-xi, momentum, state).
Eigen::Vector4d step_residual(const StepUnknowns& unknowns, const PhasePoint& point,
                              const NonlinearParams& params);

/// dF_L / d(q_xi, q_{1-xi}, p_next, q_next). Independent of the starting point.
Eigen::Matrix4d jacobian_dFL(const StepUnknowns& unknowns, const NonlinearParams& params);

/// Closed-form det dF_L = 1 + h^2/(60m)(V''_xi + V''_{1-xi}) + h^4/(1800 m^2) V''_xi V''_{1-xi}.
double jacobian_determinant(const StepUnknowns& unknowns, const NonlinearParams& params);

/// Free-drift starting guess: q_next = q + h p / m, p_next = p, interior nodes interpolated.
StepUnknowns initial_guess(const PhasePoint& point, const NonlinearParams& params);

struct StepSolution {
  StepUnknowns unknowns;
  std::size_t iterations = 0;
  /// Scaled infinity norm of F_L at the returned unknowns.
  double residual = 0.0;
  /// Scaled residual before each Newton update, then at the returned point.
  std::vector<double> residual_history;
};

/// Scaled norm used for convergence: internal and state rows divided by max(1, |q_j|),
/// the momentum row by max(1, |p_j|).
double scaled_residual_norm(const Eigen::Vector4d& residual, const PhasePoint& point);

/// Solves F_L = 0 from initial_guess. Throws SolverError on non-convergence or divergence
/// and SingularJacobianError when the linear solve breaks down.
StepSolution newton_step_solve(const PhasePoint& point, const NonlinearParams& params,
                               const NewtonConfig& cfg = {});

PhasePoint step_pendulum(const PhasePoint& point, const NonlinearParams& params,
                         const NewtonConfig& cfg = {});

/// 2x2 central-difference Jacobian of (p_j, q_j) -> (p_{j+1}, q_{j+1}), rows (p, q).
Eigen::Matrix2d one_step_jacobian(const PhasePoint& point, const NonlinearParams& params,
                                  const NewtonConfig& cfg, double eps);

/// |det J - 1| with J from one_step_jacobian.
double symplecticity_defect(const PhasePoint& point, const NonlinearParams& params,
                            const NewtonConfig& cfg, double eps);

/// Soft admissibility check: linearised bound |h w| sqrt(|cos q|) < stability_limit().
/// Only meaningful for the pendulum; not enforced by the solver.
bool linearized_step_admissible(const PhasePoint& point, const NonlinearParams& params);

}  // namespace lobatto
