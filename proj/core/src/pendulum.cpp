#include "lobatto/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "lobatto/errors.hpp"
#include "lobatto/harmonic.hpp"
#include "lobatto/quadrature.hpp"

namespace lobatto {

namespace {

// Border weights of the interior equations.
const double kNear = (5.0 + kSqrt5) / 10.0;
const double kFar = (5.0 - kSqrt5) / 10.0;

}  // namespace

void NewtonConfig::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("Newton tolerance must be positive");
  if (max_iterations < 1) throw DomainError("Newton needs at least one iteration");
  if (!(max_step_norm > 0.0)) throw DomainError("Newton step guard must be positive");
}

void NonlinearParams::validate() const {
  if (step == 0.0 || !std::isfinite(step)) throw DomainError("step must be finite and non-zero");
}

double discrete_lagrangian_nl(const ElementState& e, const NonlinearParams& params) {
  const double m = params.mass();
  const double h = params.step;
  const Potential& v = params.potential;
  const double kinetic =
      26.0 * (e.left * e.left + e.right * e.right) - 2.0 * e.left * e.right +
      50.0 * (e.xi * e.xi - e.xi * e.one_minus_xi + e.one_minus_xi * e.one_minus_xi) -
      25.0 * (e.left + e.right) * (e.xi + e.one_minus_xi) -
      15.0 * kSqrt5 * (e.left - e.right) * (e.xi - e.one_minus_xi);
  const double potential =
      v.value(e.left) + 5.0 * (v.value(e.xi) + v.value(e.one_minus_xi)) + v.value(e.right);
  return m / (12.0 * h) * kinetic - h / 12.0 * potential;
}

std::array<double, 4> discrete_lagrangian_nl_gradient(const ElementState& e,
                                                      const NonlinearParams& params) {
  const double k = params.mass() / (12.0 * params.step);
  const double w = params.step / 12.0;
  const Potential& v = params.potential;
  const double s = e.xi + e.one_minus_xi;
  const double d = e.xi - e.one_minus_xi;
  const double r = 15.0 * kSqrt5;
  return {
      k * (52.0 * e.left - 2.0 * e.right - 25.0 * s - r * d) - w * v.first(e.left),
      k * (100.0 * e.xi - 50.0 * e.one_minus_xi - 25.0 * (e.left + e.right) - r * (e.left - e.right)) -
          5.0 * w * v.first(e.xi),
      k * (100.0 * e.one_minus_xi - 50.0 * e.xi - 25.0 * (e.left + e.right) + r * (e.left - e.right)) -
          5.0 * w * v.first(e.one_minus_xi),
      k * (52.0 * e.right - 2.0 * e.left - 25.0 * s + r * d) - w * v.first(e.right),
  };
}

std::array<double, 2> internal_equations_residual(const StepUnknowns& u, double q_left,
                                                  const NonlinearParams& params) {
  const double c = params.step * params.step / (30.0 * params.mass());
  const double f_xi = params.potential.first(u.q_xi);
  const double f_eta = params.potential.first(u.q_one_minus_xi);
  return {
      u.q_xi - c * (f_eta + 2.0 * f_xi) - (kNear * q_left + kFar * u.q_next),
      u.q_one_minus_xi - c * (2.0 * f_eta + f_xi) - (kFar * q_left + kNear * u.q_next),
  };
}

std::array<double, 2> dynamics_residual(const StepUnknowns& u, const PhasePoint& point,
                                        const NonlinearParams& params) {
  const double m = params.mass();
  const double h = params.step;
  const Potential& v = params.potential;
  const double f_left = v.first(point.q);
  const double f_xi = v.first(u.q_xi);
  const double f_eta = v.first(u.q_one_minus_xi);
  const double f_right = v.first(u.q_next);
  return {
      u.p_next - point.p + h / 12.0 * (f_left + 5.0 * (f_xi + f_eta) + f_right),
      u.q_next - point.q - h * h / (24.0 * m) * (f_right + kSqrt5 * (f_eta - f_xi) - f_left) -
          h / (2.0 * m) * (u.p_next + point.p),
  };
}

Eigen::Vector4d step_residual(const StepUnknowns& unknowns, const PhasePoint& point,
                              const NonlinearParams& params) {
  const auto inner = internal_equations_residual(unknowns, point.q, params);
  const auto dyn = dynamics_residual(unknowns, point, params);
  return {inner[0], inner[1], dyn[0], dyn[1]};
}

Eigen::Matrix4d jacobian_dFL(const StepUnknowns& u, const NonlinearParams& params) {
  const double m = params.mass();
  const double h = params.step;
  const double h2 = h * h;
  const double s_xi = params.potential.second(u.q_xi);
  const double s_eta = params.potential.second(u.q_one_minus_xi);
  const double s_r = params.potential.second(u.q_next);

  Eigen::Matrix4d j;
  j << 1.0 - h2 / (15.0 * m) * s_xi, -h2 / (30.0 * m) * s_eta, 0.0, -kFar,
      -h2 / (30.0 * m) * s_xi, 1.0 - h2 / (15.0 * m) * s_eta, 0.0, -kNear,
      5.0 * h / 12.0 * s_xi, 5.0 * h / 12.0 * s_eta, 1.0, h / 12.0 * s_r,
      kSqrt5 * h2 / (24.0 * m) * s_xi, -kSqrt5 * h2 / (24.0 * m) * s_eta, -h / (2.0 * m),
      1.0 - h2 / (24.0 * m) * s_r;
  return j;
}

double jacobian_determinant(const StepUnknowns& u, const NonlinearParams& params) {
  const double m = params.mass();
  const double h2 = params.step * params.step;
  const double s_xi = params.potential.second(u.q_xi);
  const double s_eta = params.potential.second(u.q_one_minus_xi);
  return 1.0 + h2 / (60.0 * m) * (s_xi + s_eta) + h2 * h2 / (1800.0 * m * m) * s_xi * s_eta;
}

StepUnknowns initial_guess(const PhasePoint& point, const NonlinearParams& params) {
  const double drift = point.q + params.step * point.p / params.mass();
  const double dq = drift - point.q;
  return {point.q + kXi * dq, point.q + (1.0 - kXi) * dq, point.p, drift};
}

double scaled_residual_norm(const Eigen::Vector4d& r, const PhasePoint& point) {
  const double q_scale = std::max(1.0, std::abs(point.q));
  const double p_scale = std::max(1.0, std::abs(point.p));
  return std::max({std::abs(r[0]) / q_scale, std::abs(r[1]) / q_scale, std::abs(r[2]) / p_scale,
                   std::abs(r[3]) / q_scale});
}

StepSolution newton_step_solve(const PhasePoint& point, const NonlinearParams& params,
                               const NewtonConfig& cfg) {
  params.validate();
  cfg.validate();

  StepSolution sol;
  Eigen::Vector4d x = initial_guess(point, params).vector();
  for (;;) {
    const StepUnknowns u = StepUnknowns::from(x);
    const Eigen::Vector4d f = step_residual(u, point, params);
    const double norm = scaled_residual_norm(f, point);
    sol.residual_history.push_back(norm);
    if (!std::isfinite(norm)) {
      throw SolverError("Newton residual is not finite", sol.iterations, norm);
    }
    if (norm <= cfg.tolerance) {
      sol.unknowns = u;
      sol.residual = norm;
      return sol;
    }
    if (sol.iterations >= cfg.max_iterations) {
      throw SolverError("Newton did not converge in " + std::to_string(cfg.max_iterations) +
                            " iterations (scaled residual " + std::to_string(norm) + ")",
                        sol.iterations, norm);
    }

    const Eigen::PartialPivLU<Eigen::Matrix4d> lu(jacobian_dFL(u, params));
    const Eigen::Matrix4d& packed = lu.matrixLU();
    const double pivot = packed.diagonal().cwiseAbs().minCoeff();
    if (!(pivot > 1e-14 * packed.cwiseAbs().maxCoeff())) {
      throw SingularJacobianError("singular Newton Jacobian", sol.iterations, norm);
    }
    const Eigen::Vector4d delta = lu.solve(-f);
    if (!(delta.cwiseAbs().maxCoeff() <= cfg.max_step_norm)) {
      throw SolverError("Newton update exceeded the divergence guard", sol.iterations, norm);
    }
    x += delta;
    ++sol.iterations;
  }
}

PhasePoint step_pendulum(const PhasePoint& point, const NonlinearParams& params,
                         const NewtonConfig& cfg) {
  const StepUnknowns u = newton_step_solve(point, params, cfg).unknowns;
  return {u.p_next, u.q_next};
}

Eigen::Matrix2d one_step_jacobian(const PhasePoint& point, const NonlinearParams& params,
                                  const NewtonConfig& cfg, double eps) {
  if (!(eps > 0.0)) throw DomainError("perturbation scale must be positive");
  const auto image = [&](double dp, double dq) {
    return step_pendulum({point.p + dp, point.q + dq}, params, cfg);
  };
  const PhasePoint pp = image(eps, 0.0);
  const PhasePoint pm = image(-eps, 0.0);
  const PhasePoint qp = image(0.0, eps);
  const PhasePoint qm = image(0.0, -eps);

  Eigen::Matrix2d j;
  j << (pp.p - pm.p) / (2.0 * eps), (qp.p - qm.p) / (2.0 * eps),
      (pp.q - pm.q) / (2.0 * eps), (qp.q - qm.q) / (2.0 * eps);
  return j;
}

double symplecticity_defect(const PhasePoint& point, const NonlinearParams& params,
                            const NewtonConfig& cfg, double eps) {
  return std::abs(one_step_jacobian(point, params, cfg, eps).determinant() - 1.0);
}

bool linearized_step_admissible(const PhasePoint& point, const NonlinearParams& params) {
  double curvature = 1.0;
  if (params.potential.kind() == PotentialKind::pendulum) curvature = std::abs(std::cos(point.q));
  return std::abs(params.step * params.omega()) * std::sqrt(curvature) < stability_limit();
}

}  // namespace lobatto
