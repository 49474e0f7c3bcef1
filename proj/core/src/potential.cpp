#include "lobatto/potential.hpp"

#include <cmath>
#include <string>

#include "lobatto/errors.hpp"

namespace lobatto {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::harmonic:
      return "harmonic";
    case PotentialKind::pendulum:
      return "pendulum";
  }
  return "unknown";
}

Potential::Potential(PotentialKind kind, double mass, double omega)
    : kind_(kind), mass_(mass), omega_(omega), stiffness_(mass * omega * omega) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("potential mass must be positive, got " + std::to_string(mass));
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw DomainError("potential omega must be non-negative, got " + std::to_string(omega));
  }
}

Potential Potential::harmonic(double mass, double omega) {
  return {PotentialKind::harmonic, mass, omega};
}

Potential Potential::pendulum(double mass, double omega) {
  return {PotentialKind::pendulum, mass, omega};
}

double Potential::value(double q) const noexcept {
  if (kind_ == PotentialKind::harmonic) return 0.5 * stiffness_ * q * q;
  // 1 - cos q = 2 sin^2(q/2) avoids cancellation near the bottom.
  const double s = std::sin(0.5 * q);
  return 2.0 * stiffness_ * s * s;
}

double Potential::first(double q) const noexcept {
  if (kind_ == PotentialKind::harmonic) return stiffness_ * q;
  return stiffness_ * std::sin(q);
}

double Potential::second(double q) const noexcept {
  if (kind_ == PotentialKind::harmonic) return stiffness_;
  return stiffness_ * std::cos(q);
}

double Potential::energy(double p, double q) const noexcept {
  return p * p / (2.0 * mass_) + value(q);
}

}  // namespace lobatto
