#pragma once

#include <array>
#include <cmath>

#include "lobatto/phase.hpp"

namespace lobatto {

/// sqrt(5), shared by every closed form built on the 4-point rule.
inline const double kSqrt5 = std::sqrt(5.0);

/// Interior Lobatto node xi = 1/2 - sqrt(5)/10; satisfies xi(1-xi) = 1/5.
inline const double kXi = 0.5 - kSqrt5 / 10.0;

/// 4-point Lobatto rule on [0,1]: nodes {0, xi, 1-xi, 1}, weights {1,5,5,1}/12.
/// Exact for polynomials of degree <= 5.
struct QuadratureRule {
  std::array<double, 4> nodes;
  std::array<double, 4> weights;
};

using Basis = std::array<double, 4>;
using StiffnessMatrix = std::array<std::array<double, 4>, 4>;

QuadratureRule lobatto_rule();

/// Sum of w_i f(node_i) over the unit interval.
template <typename F>
double integrate_unit(F&& f) {
  const QuadratureRule rule = lobatto_rule();
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

/// Cubic Lagrange basis (phi_0, phi_xi, phi_{1-xi}, phi_1) at theta in [0,1].
/// Throws DomainError outside the element.
Basis eval_basis(double theta);

/// d/dtheta of the basis. Components sum to zero.
Basis eval_basis_deriv(double theta);

/// Element interpolant q(theta) = sum_a q_a phi_a(theta).
double interpolate(const ElementState& element, double theta);

/// Closed-form element stiffness K with K_d = m/(2h^2) q^T K q.
StiffnessMatrix stiffness_matrix();

/// K_ab = sum_i w_i phi'_a(node_i) phi'_b(node_i), assembled with the rule itself.
StiffnessMatrix assemble_stiffness();

}  // namespace lobatto
