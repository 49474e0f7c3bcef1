#include "lobatto/quadrature.hpp"

#include <string>

#include "lobatto/errors.hpp"

namespace lobatto {

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError("basis evaluated outside [0,1]: theta = " + std::to_string(theta));
  }
}

}  // namespace

QuadratureRule lobatto_rule() {
  return {{0.0, kXi, 1.0 - kXi, 1.0}, {1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0}};
}

Basis eval_basis(double theta) {
  check_theta(theta);
  const double eta = 1.0 - kXi;
  const double t = theta;
  return {
      5.0 * (t - kXi) * (t - eta) * (1.0 - t),
      -5.0 * kSqrt5 * t * (1.0 - t) * (t - eta),
      5.0 * kSqrt5 * t * (1.0 - t) * (t - kXi),
      5.0 * t * (t - kXi) * (t - eta),
  };
}

Basis eval_basis_deriv(double theta) {
  check_theta(theta);
  const double eta = 1.0 - kXi;
  const double t = theta;
  // Product rule on each three-factor form above.
  const double a = t - kXi;
  const double b = t - eta;
  const double c = 1.0 - t;
  return {
      5.0 * (b * c + a * c - a * b),
      -5.0 * kSqrt5 * ((1.0 - 2.0 * t) * b + t * c),
      5.0 * kSqrt5 * ((1.0 - 2.0 * t) * a + t * c),
      5.0 * (a * b + t * b + t * a),
  };
}

double interpolate(const ElementState& element, double theta) {
  const Basis phi = eval_basis(theta);
  return element.left * phi[0] + element.xi * phi[1] + element.one_minus_xi * phi[2] +
         element.right * phi[3];
}

StiffnessMatrix stiffness_matrix() {
  const double s = 5.0 * kSqrt5 / 4.0;
  const double minus = -s - 25.0 / 12.0;
  const double plus = s - 25.0 / 12.0;
  return {{
      {13.0 / 3.0, minus, plus, -1.0 / 6.0},
      {minus, 25.0 / 3.0, -25.0 / 6.0, plus},
      {plus, -25.0 / 6.0, 25.0 / 3.0, minus},
      {-1.0 / 6.0, plus, minus, 13.0 / 3.0},
  }};
}

StiffnessMatrix assemble_stiffness() {
  const QuadratureRule rule = lobatto_rule();
  StiffnessMatrix k{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Basis d = eval_basis_deriv(rule.nodes[i]);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) k[a][b] += rule.weights[i] * d[a] * d[b];
    }
  }
  return k;
}

}  // namespace lobatto
