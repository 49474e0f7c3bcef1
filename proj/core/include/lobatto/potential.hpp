#pragma once

#include <string_view>

namespace lobatto {

enum class PotentialKind { harmonic, pendulum };

std::string_view to_string(PotentialKind kind);

/// Potential V(q) with its first two derivatives.
///   harmonic: V = m w^2 q^2 / 2
///   pendulum: V = m w^2 (1 - cos q)
/// omega = 0 gives the free particle (V == 0) for either kind.
class Potential {
 public:
  static Potential harmonic(double mass, double omega);
  static Potential pendulum(double mass, double omega);

  PotentialKind kind() const noexcept { return kind_; }
  double mass() const noexcept { return mass_; }
  double omega() const noexcept { return omega_; }

  double value(double q) const noexcept;
  double first(double q) const noexcept;
  double second(double q) const noexcept;

  /// Continuous energy H(p, q) = p^2 / 2m + V(q).
  double energy(double p, double q) const noexcept;

 private:
  Potential(PotentialKind kind, double mass, double omega);

  PotentialKind kind_;
  double mass_;
  double omega_;
  double stiffness_;  // m w^2
};

}  // namespace lobatto
