#include <numbers>

#include <benchmark/benchmark.h>

#include "lobatto/exact.hpp"
#include "lobatto/harmonic.hpp"
#include "lobatto/midpoint.hpp"
#include "lobatto/pendulum.hpp"
#include "lobatto/simulation.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void BM_HarmonicStep(benchmark::State& state) {
  const lobatto::TransferMatrix phi = lobatto::transfer_matrix({1.0, kTwoPi, 0.1});
  lobatto::PhasePoint point{0.0, 1.0};
  for (auto _ : state) {
    point = lobatto::step_harmonic(point, phi);
    benchmark::DoNotOptimize(point);
  }
}
BENCHMARK(BM_HarmonicStep);

void BM_PendulumStep(benchmark::State& state) {
  const lobatto::NonlinearParams params{0.025, lobatto::Potential::pendulum(1.0, kTwoPi)};
  lobatto::PhasePoint point{0.0, std::numbers::pi / 2};
  for (auto _ : state) {
    point = lobatto::step_pendulum(point, params);
    benchmark::DoNotOptimize(point);
  }
}
BENCHMARK(BM_PendulumStep);

void BM_MidpointPendulumStep(benchmark::State& state) {
  const lobatto::MidpointParams params{0.025, lobatto::Potential::pendulum(1.0, kTwoPi), {}};
  lobatto::PhasePoint point{0.0, std::numbers::pi / 2};
  for (auto _ : state) {
    point = lobatto::step_midpoint(point, params);
    benchmark::DoNotOptimize(point);
  }
}
BENCHMARK(BM_MidpointPendulumStep);

void BM_JacobiElliptic(benchmark::State& state) {
  double u = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lobatto::jacobi_elliptic(u, 0.7071067811865476));
    u += 0.013;
  }
}
BENCHMARK(BM_JacobiElliptic);

void BM_PendulumPeriod(benchmark::State& state) {
  const auto meshes = static_cast<std::size_t>(state.range(0));
  lobatto::SimulationSpec spec{lobatto::System::pendulum, lobatto::Scheme::lobatto, 1.0, kTwoPi,
                               std::numbers::pi / 2, 0.0, meshes, {}};
  spec.step = spec.exact_period() / static_cast<double>(meshes);
  for (auto _ : state) benchmark::DoNotOptimize(lobatto::simulate(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(meshes));
}
BENCHMARK(BM_PendulumPeriod)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
