#include "lobatto/exact.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lobatto/errors.hpp"

namespace lobatto {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxLanden = 64;

// Running sum with the low-order bits carried separately (Kahan).
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

}  // namespace

PhasePoint harmonic_exact(double t, const HarmonicExact& params) {
  const double phase = params.omega * t;
  return {-params.amplitude * params.mass * params.omega * std::sin(phase),
          params.amplitude * std::cos(phase)};
}

double complete_elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("complete_elliptic_K needs 0 <= k < 1, got " + std::to_string(k));
  }
  double a = 1.0;
  double b = complementary(k);
  for (int i = 0; i < kMaxLanden && std::abs(a - b) > kEps * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (a + b);
}

JacobiElliptic jacobi_elliptic(double u, double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("jacobi_elliptic needs 0 <= k < 1, got " + std::to_string(k));
  }
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};

  const double period = 4.0 * complete_elliptic_K(k);
  u = std::remainder(u, period);

  std::array<double, kMaxLanden + 1> a{};
  std::array<double, kMaxLanden + 1> c{};
  a[0] = 1.0;
  double b = complementary(k);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > kEps && n < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(1.0 - k * k * sn * sn);
  return {sn, cn, dn};
}

double PendulumExact::modulus() const { return std::sin(0.5 * release_angle); }

double PendulumExact::period() const {
  validate();
  return 4.0 * complete_elliptic_K(modulus()) / omega;
}

double PendulumExact::energy() const {
  const double s = std::sin(0.5 * release_angle);
  return 2.0 * mass * omega * omega * s * s;
}

void PendulumExact::validate() const {
  if (!(release_angle > 0.0 && release_angle < std::numbers::pi)) {
    throw DomainError("release angle must lie in (0, pi), got " + std::to_string(release_angle));
  }
  if (!(omega > 0.0) || !(mass > 0.0)) throw DomainError("omega and mass must be positive");
}

PhasePoint pendulum_exact(double t, const PendulumExact& params) {
  params.validate();
  const double k = params.modulus();
  const JacobiElliptic f = jacobi_elliptic(params.omega * t, k);
  const double q = 2.0 * std::asin(k * f.cn / f.dn);
  const double p = -2.0 * params.mass * k * complementary(k) * params.omega * f.sn / f.dn;
  return {p, q};
}

PhasePoint oracle_integrate(const Potential& potential, const PhasePoint& point, double t_end,
                            std::size_t n_steps) {
  if (n_steps == 0) return point;
  const double h = t_end / static_cast<double>(n_steps);
  const double m = potential.mass();
  Compensated q{point.q};
  Compensated p{point.p};
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double q0 = q.sum;
    const double p0 = p.sum;
    const double k1q = p0 / m;
    const double k1p = -potential.first(q0);
    const double k2q = (p0 + 0.5 * h * k1p) / m;
    const double k2p = -potential.first(q0 + 0.5 * h * k1q);
    const double k3q = (p0 + 0.5 * h * k2p) / m;
    const double k3p = -potential.first(q0 + 0.5 * h * k2q);
    const double k4q = (p0 + h * k3p) / m;
    const double k4p = -potential.first(q0 + h * k3q);
    q.add(h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q));
    p.add(h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p));
  }
  return {p.sum, q.sum};
}

}  // namespace lobatto
