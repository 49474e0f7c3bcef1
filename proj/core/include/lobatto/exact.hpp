#pragma once

#include <cstddef>

#include "lobatto/phase.hpp"
#include "lobatto/potential.hpp"

namespace lobatto {

/// q(t) = A cos(w t), p(t) = -A m w sin(w t).
struct HarmonicExact {
  double amplitude = 1.0;
  double omega = 1.0;
  double mass = 1.0;

  double energy() const noexcept { return 0.5 * mass * omega * omega * amplitude * amplitude; }
};

PhasePoint harmonic_exact(double t, const HarmonicExact& params);

/// Complete elliptic integral of the first kind K(k), by the arithmetic-geometric mean.
/// Throws DomainError unless 0 <= k < 1.
double complete_elliptic_K(double k);

struct JacobiElliptic {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn, cn, dn(u, k) by descending Landen / AGM recursion; the argument is first
/// reduced modulo the period 4K(k).
JacobiElliptic jacobi_elliptic(double u, double k);

/// Pendulum q'' + w^2 sin q = 0 released from rest at q0 in (0, pi).
struct PendulumExact {
  double release_angle = 1.0;
  double omega = 1.0;
  double mass = 1.0;

  /// k = sin(q0 / 2).
  double modulus() const;
  /// 4 K(k) / w.
  double period() const;
  double energy() const;
  void validate() const;
};

/// sin(q/2) = k cd(w t, k) and p = m dq/dt = -2 m k k' w sn / dn.
PhasePoint pendulum_exact(double t, const PendulumExact& params);

/// Classical fourth-order Runge-Kutta reference for qdot = p/m, pdot = -V'(q) with
/// compensated accumulation of the state. Verification only.
PhasePoint oracle_integrate(const Potential& potential, const PhasePoint& point, double t_end,
                            std::size_t n_steps);

}  // namespace lobatto
