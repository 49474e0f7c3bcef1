#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lobatto/phase.hpp"

namespace lobatto {

enum class Observable { momentum, state, energy, discrete_energy };

/// Node-sampled trajectory with optional reference data.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  /// Continuous energy H(p, q) at each node.
  std::vector<double> energies;
  std::optional<std::vector<PhasePoint>> exact;
  /// H evaluated on the exact solution at each node.
  std::optional<std::vector<double>> exact_energies;
  /// H_d at each node (harmonic Lobatto only).
  std::optional<std::vector<double>> discrete_energies;

  std::size_t size() const noexcept { return times.size(); }

  /// Throws DomainError unless all sequences have equal length and times increase.
  void validate() const;
};

/// max over nodes of |numerical - reference|. The reference is the exact solution for
/// p, q and H, and the initial value for H_d. Throws DomainError when it is missing.
double linf_error(const TrajectoryRecord& record, Observable observable);

/// Closest integer to log2(coarse / fine). Throws DomainError for non-positive or
/// non-finite errors.
int estimate_order(double coarse_error, double fine_error);

/// Errors per mesh level; orders on row i compare rows i-1 and i.
struct ConvergenceTable {
  struct Row {
    std::size_t meshes = 0;
    double err_p = 0.0;
    double err_q = 0.0;
    double err_H = 0.0;
    std::optional<double> err_Hd;
    std::optional<int> order_p;
    std::optional<int> order_q;
    std::optional<int> order_H;
  };
  std::vector<Row> rows;
};

/// Builds the table from one record per mesh count. Mesh counts must double.
ConvergenceTable make_convergence_table(std::span<const std::size_t> meshes,
                                        std::span<const TrajectoryRecord> records);

struct DriftSeries {
  std::vector<std::size_t> period;
  /// max |E - E(0)| over the nodes of each period.
  std::vector<double> period_max;
  /// Running maximum of period_max.
  std::vector<double> running_max;
  /// Ordinary least-squares slope of running_max against period index.
  double growth_rate = 0.0;
};

/// Energy drift per period of length `period_length` for the first `window` periods.
/// Nodes with t in ((i-1)T, iT] belong to period i-1; t = 0 belongs to period 0.
/// observable is energy or discrete_energy.
DriftSeries energy_drift_series(const TrajectoryRecord& record, double period_length,
                                std::size_t window, Observable observable);

struct StabilityPoint {
  double h_omega = 0.0;
  /// Largest sqrt((p/(m w))^2 + q^2) over the run relative to its initial value.
  double max_norm_ratio = 0.0;
  bool bounded = true;
};

struct StabilityScan {
  std::vector<StabilityPoint> points;
  /// (last bounded, first unbounded) grid values, when the grid crosses the boundary.
  std::optional<std::pair<double, double>> transition;
};

/// Runs the harmonic Lobatto map from (p, q) = (0, 1) for `steps` steps at every h w in
/// the ascending grid. A run is bounded while the scaled norm stays within 10x.
StabilityScan stability_scan(double omega, double mass, std::span<const double> h_omega_grid,
                             std::size_t steps);

}  // namespace lobatto
