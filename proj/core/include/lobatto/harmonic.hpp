#pragma once

#include <utility>

#include "lobatto/phase.hpp"

namespace lobatto {

/// Harmonic oscillator discretisation: mass m, angular frequency omega, step h.
/// A negative step integrates backwards in time; h = 0 is rejected.
struct HarmonicParams {
  double mass = 1.0;
  double omega = 1.0;
  double step = 0.1;

  /// (h omega)^2, the single variable every coefficient polynomial is written in.
  double h2w2() const noexcept { return step * step * omega * omega; }

  /// Throws DomainError unless m > 0, omega >= 0 and h finite and non-zero.
  void validate() const;
};

/// Interior nodes (q_xi, q_{1-xi}) that make L_d stationary in the element.
/// Throws EliminationError when |h omega| >= sqrt(10).
std::pair<double, double> internal_dofs(double q_left, double q_right, const HarmonicParams& params);

/// Quadratic discrete Lagrangian h (K_d - U) of one element, V = m w^2 q^2 / 2.
double discrete_lagrangian(const ElementState& element, const HarmonicParams& params);

/// L_d with the interior nodes eliminated. Symmetric in its two arguments.
double reduced_lagrangian(double q_left, double q_right, const HarmonicParams& params);

/// p_r = dL_r/dq_r. Because L_r is symmetric, dL_r/dq_l(a, b) = right_momentum(b, a).
double right_momentum(double q_left, double q_right, const HarmonicParams& params);

/// One-step map (p, q) -> Phi (p, q), Phi = [[a, b], [c, a]] / delta_tilde.
///
/// Coefficients are polynomials in (h w)^2 evaluated in Horner form and held in
/// extended precision; rounding them to double would break det(Phi) = 1 at the
/// level the discrete energy is conserved.
struct TransferMatrix {
  long double delta_tilde = 1.0L;
  long double a = 1.0L;
  long double b = 0.0L;
  long double c = 0.0L;
  /// |h w| below the stability limit; eigenvalues of Phi then lie on the unit circle.
  bool stable = true;

  double determinant() const noexcept;
  double trace() const noexcept;
  /// Entry (row, col) of Phi, both in {0, 1}.
  double entry(int row, int col) const noexcept;
};

TransferMatrix transfer_matrix(const HarmonicParams& params);

PhasePoint step_harmonic(const PhasePoint& point, const TransferMatrix& phi);

/// H_d = c p^2 / (2 delta_tilde) - b q^2 / (2 delta_tilde), invariant under step_harmonic.
/// Scales like h times the physical energy.
double discrete_energy(const PhasePoint& point, const TransferMatrix& phi);

/// sqrt(42 - 6 sqrt(29)) ~ 3.1127, a little under pi: slightly more than two steps
/// per period keep the scheme stable.
double stability_limit();

/// Leading truncation error w^8 h^6 q / 302400 of the three-point recurrence, i.e. its
/// residual on exact samples q(t), q(t +- h).
double truncation_leading_term(const HarmonicParams& params, double q);

/// Left side of the three-point recurrence
///   (q- - 2q + q+)/h^2 + w^2/30 (q- + 28q + q+) + w^4 h^2/1800 (q- - 92q + q+) + w^6 h^4/1800 q.
/// Real may be any field type, including multiprecision floats.
template <typename Real>
Real center_el_residual(Real q_prev, Real q, Real q_next, Real step, Real omega) {
  const Real w2 = omega * omega;
  const Real h2 = step * step;
  return (q_prev - 2 * q + q_next) / h2 + w2 / 30 * (q_prev + 28 * q + q_next) +
         w2 * w2 * h2 / 1800 * (q_prev - 92 * q + q_next) + w2 * w2 * w2 * h2 * h2 / 1800 * q;
}

}  // namespace lobatto
