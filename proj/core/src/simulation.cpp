#include "lobatto/simulation.hpp"

#include <functional>
#include <numbers>
#include <optional>

#include "lobatto/errors.hpp"
#include "lobatto/exact.hpp"
#include "lobatto/harmonic.hpp"
#include "lobatto/midpoint.hpp"

namespace lobatto {

std::string_view to_string(System system) {
  return system == System::harmonic ? "harmonic" : "pendulum";
}

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::lobatto ? "lobatto" : "midpoint";
}

double SimulationSpec::exact_period() const {
  if (system == System::harmonic) return 2.0 * std::numbers::pi / omega;
  return PendulumExact{amplitude, omega, mass}.period();
}

void simulate_into(const SimulationSpec& spec, TrajectoryRecord& out) {
  const Potential potential = spec.system == System::harmonic
                                  ? Potential::harmonic(spec.mass, spec.omega)
                                  : Potential::pendulum(spec.mass, spec.omega);

  std::function<PhasePoint(double)> exact;
  if (spec.system == System::harmonic) {
    const HarmonicExact ref{spec.amplitude, spec.omega, spec.mass};
    exact = [ref](double t) { return harmonic_exact(t, ref); };
  } else {
    const PendulumExact ref{spec.amplitude, spec.omega, spec.mass};
    ref.validate();
    exact = [ref](double t) { return pendulum_exact(t, ref); };
  }

  std::optional<TransferMatrix> phi;
  if (spec.system == System::harmonic && spec.scheme == Scheme::lobatto) {
    phi = transfer_matrix({spec.mass, spec.omega, spec.step});
  }
  const NonlinearParams nonlinear{spec.step, potential};
  const MidpointParams midpoint{spec.step, potential, spec.newton};

  out = TrajectoryRecord{};
  out.exact.emplace();
  out.exact_energies.emplace();
  if (phi) out.discrete_energies.emplace();
  out.times.reserve(spec.steps + 1);
  out.points.reserve(spec.steps + 1);

  const auto record = [&](std::size_t j, const PhasePoint& point) {
    const double t = static_cast<double>(j) * spec.step;
    const PhasePoint ref = exact(t);
    out.times.push_back(t);
    out.points.push_back(point);
    out.energies.push_back(potential.energy(point.p, point.q));
    out.exact->push_back(ref);
    out.exact_energies->push_back(potential.energy(ref.p, ref.q));
    if (phi) out.discrete_energies->push_back(discrete_energy(point, *phi));
  };

  PhasePoint point = exact(0.0);
  record(0, point);
  for (std::size_t j = 1; j <= spec.steps; ++j) {
    if (phi) {
      point = step_harmonic(point, *phi);
    } else if (spec.scheme == Scheme::lobatto) {
      point = step_pendulum(point, nonlinear, spec.newton);
    } else {
      point = step_midpoint(point, midpoint);
    }
    record(j, point);
  }
}

TrajectoryRecord simulate(const SimulationSpec& spec) {
  TrajectoryRecord out;
  simulate_into(spec, out);
  return out;
}

}  // namespace lobatto
