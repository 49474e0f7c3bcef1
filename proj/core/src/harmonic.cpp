#include "lobatto/harmonic.hpp"

#include <cmath>
#include <string>

#include "lobatto/errors.hpp"
#include "lobatto/quadrature.hpp"

namespace lobatto {

namespace {

// delta = (x - 30)(x - 10), x = (h w)^2; positive on the admissible branch x < 10.
double elimination_delta(const HarmonicParams& params) {
  params.validate();
  const double x = params.h2w2();
  if (!(x < 10.0)) {
    throw EliminationError("internal-node elimination needs |h omega| < sqrt(10), got " +
                           std::to_string(std::sqrt(x)));
  }
  return (x - 30.0) * (x - 10.0);
}

}  // namespace

void HarmonicParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("omega must be non-negative");
  if (step == 0.0 || !std::isfinite(step)) throw DomainError("step must be finite and non-zero");
}

std::pair<double, double> internal_dofs(double q_left, double q_right, const HarmonicParams& params) {
  const double delta = elimination_delta(params);
  const double x = params.h2w2();
  const double sum = -5.0 * (x - 30.0) * (q_right + q_left);
  const double diff = 3.0 * kSqrt5 * (x - 10.0) * (q_right - q_left);
  return {(sum + diff) / delta, (sum - diff) / delta};
}

double discrete_lagrangian(const ElementState& e, const HarmonicParams& params) {
  params.validate();
  const double m = params.mass;
  const double h = params.step;
  const double kinetic =
      26.0 * (e.left * e.left + e.right * e.right) - 2.0 * e.left * e.right +
      50.0 * (e.xi * e.xi - e.xi * e.one_minus_xi + e.one_minus_xi * e.one_minus_xi) -
      25.0 * (e.left + e.right) * (e.xi + e.one_minus_xi) -
      15.0 * kSqrt5 * (e.left - e.right) * (e.xi - e.one_minus_xi);
  const double potential = e.left * e.left + e.right * e.right +
                           5.0 * (e.xi * e.xi + e.one_minus_xi * e.one_minus_xi);
  return m / (12.0 * h) * kinetic - m * h * params.omega * params.omega / 24.0 * potential;
}

double reduced_lagrangian(double q_left, double q_right, const HarmonicParams& params) {
  const double delta = elimination_delta(params);
  const double m = params.mass;
  const double h = params.step;
  const double x = params.h2w2();
  const double diag = ((-x + 92.0) * x - 1680.0) * x + 3600.0;
  const double cross = (x + 60.0) * x + 1800.0;
  return (m / 4.0 * diag * (q_left * q_left + q_right * q_right) - m * cross * q_left * q_right) /
         (6.0 * h * delta);
}

double right_momentum(double q_left, double q_right, const HarmonicParams& params) {
  const double delta = elimination_delta(params);
  const double m = params.mass;
  const double h = params.step;
  const double w2 = params.omega * params.omega;
  const double h2w2 = params.h2w2();
  const double correction = h * w2 *
                            (-300.0 * (q_left + 2.0 * q_right) + 5.0 * h2w2 * (q_left + 8.0 * q_right) -
                             0.5 * h2w2 * h2w2 * q_right);
  return m * (q_right - q_left) / h + m / (6.0 * delta) * correction;
}

double TransferMatrix::determinant() const noexcept {
  return static_cast<double>((a * a - b * c) / (delta_tilde * delta_tilde));
}

double TransferMatrix::trace() const noexcept {
  return static_cast<double>(2.0L * a / delta_tilde);
}

double TransferMatrix::entry(int row, int col) const noexcept {
  long double v = a;
  if (row == 0 && col == 1) v = b;
  if (row == 1 && col == 0) v = c;
  return static_cast<double>(v / delta_tilde);
}

TransferMatrix transfer_matrix(const HarmonicParams& params) {
  params.validate();
  using Ext = long double;
  const Ext m = params.mass;
  const Ext h = params.step;
  const Ext w = params.omega;
  const Ext x = h * h * w * w;

  TransferMatrix phi;
  phi.delta_tilde = 1.0L + x * (1.0L / 30.0L + x / 1800.0L);
  phi.a = 1.0L + x * (-7.0L / 15.0L + x * (23.0L / 900.0L - x / 3600.0L));
  // m h w^2 (x - 60)(x^2 - 84x + 720) / 43200, expanded.
  phi.b = -m * h * w * w * (1.0L + x * (-2.0L / 15.0L + x * (1.0L / 300.0L - x / 43200.0L)));
  phi.c = h / m * (1.0L + x * (-2.0L / 15.0L + x / 300.0L));
  phi.stable = std::abs(params.step * params.omega) < stability_limit();
  return phi;
}

PhasePoint step_harmonic(const PhasePoint& point, const TransferMatrix& phi) {
  const long double p = point.p;
  const long double q = point.q;
  return {static_cast<double>((phi.a * p + phi.b * q) / phi.delta_tilde),
          static_cast<double>((phi.c * p + phi.a * q) / phi.delta_tilde)};
}

double discrete_energy(const PhasePoint& point, const TransferMatrix& phi) {
  const long double p = point.p;
  const long double q = point.q;
  return static_cast<double>((phi.c * p * p - phi.b * q * q) / (2.0L * phi.delta_tilde));
}

double stability_limit() { return std::sqrt(42.0 - 6.0 * std::sqrt(29.0)); }

double truncation_leading_term(const HarmonicParams& params, double q) {
  const double w2 = params.omega * params.omega;
  const double h2 = params.step * params.step;
  return (w2 * w2 * w2 * w2) * (h2 * h2 * h2) * q / 302400.0;
}

}  // namespace lobatto
