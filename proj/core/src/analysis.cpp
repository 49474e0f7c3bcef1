#include "lobatto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lobatto/errors.hpp"
#include "lobatto/harmonic.hpp"

namespace lobatto {

namespace {

constexpr double kBoundednessFactor = 10.0;

template <typename T>
void check_length(const std::optional<std::vector<T>>& v, std::size_t n, const char* name) {
  if (v && v->size() != n) {
    throw DomainError(std::string("trajectory column '") + name + "' has the wrong length");
  }
}

double sample(const TrajectoryRecord& r, Observable obs, std::size_t i) {
  switch (obs) {
    case Observable::momentum:
      return r.points[i].p;
    case Observable::state:
      return r.points[i].q;
    case Observable::energy:
      return r.energies[i];
    case Observable::discrete_energy:
      return (*r.discrete_energies)[i];
  }
  return 0.0;
}

}  // namespace

void TrajectoryRecord::validate() const {
  const std::size_t n = times.size();
  if (points.size() != n || energies.size() != n) {
    throw DomainError("trajectory columns have different lengths");
  }
  check_length(exact, n, "exact");
  check_length(exact_energies, n, "exact_energies");
  check_length(discrete_energies, n, "discrete_energies");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("trajectory times must increase strictly");
  }
}

double linf_error(const TrajectoryRecord& r, Observable obs) {
  r.validate();
  const std::size_t n = r.size();
  double worst = 0.0;
  switch (obs) {
    case Observable::momentum:
    case Observable::state: {
      if (!r.exact) throw DomainError("linf_error: exact solution missing");
      for (std::size_t i = 0; i < n; ++i) {
        const double ref = obs == Observable::momentum ? (*r.exact)[i].p : (*r.exact)[i].q;
        worst = std::max(worst, std::abs(sample(r, obs, i) - ref));
      }
      return worst;
    }
    case Observable::energy: {
      if (!r.exact_energies) throw DomainError("linf_error: exact energies missing");
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(r.energies[i] - (*r.exact_energies)[i]));
      }
      return worst;
    }
    case Observable::discrete_energy: {
      if (!r.discrete_energies) throw DomainError("linf_error: discrete energies missing");
      if (n == 0) return 0.0;
      const double initial = r.discrete_energies->front();
      for (double e : *r.discrete_energies) worst = std::max(worst, std::abs(e - initial));
      return worst;
    }
  }
  return worst;
}

int estimate_order(double coarse_error, double fine_error) {
  if (!(coarse_error > 0.0 && fine_error > 0.0) || !std::isfinite(coarse_error) ||
      !std::isfinite(fine_error)) {
    throw DomainError("estimate_order needs two positive finite errors");
  }
  return static_cast<int>(std::lround(std::log2(coarse_error / fine_error)));
}

ConvergenceTable make_convergence_table(std::span<const std::size_t> meshes,
                                        std::span<const TrajectoryRecord> records) {
  if (meshes.size() != records.size()) {
    throw DomainError("one trajectory record per mesh count is required");
  }
  ConvergenceTable table;
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (i > 0 && meshes[i] != 2 * meshes[i - 1]) {
      throw DomainError("mesh counts must double from one level to the next");
    }
    ConvergenceTable::Row row;
    row.meshes = meshes[i];
    row.err_p = linf_error(records[i], Observable::momentum);
    row.err_q = linf_error(records[i], Observable::state);
    row.err_H = linf_error(records[i], Observable::energy);
    if (records[i].discrete_energies) row.err_Hd = linf_error(records[i], Observable::discrete_energy);
    if (i > 0) {
      const auto& prev = table.rows.back();
      row.order_p = estimate_order(prev.err_p, row.err_p);
      row.order_q = estimate_order(prev.err_q, row.err_q);
      row.order_H = estimate_order(prev.err_H, row.err_H);
    }
    table.rows.push_back(row);
  }
  return table;
}

DriftSeries energy_drift_series(const TrajectoryRecord& r, double period_length, std::size_t window,
                                Observable observable) {
  r.validate();
  if (observable != Observable::energy && observable != Observable::discrete_energy) {
    throw DomainError("energy_drift_series tracks H or H_d only");
  }
  if (observable == Observable::discrete_energy && !r.discrete_energies) {
    throw DomainError("energy_drift_series: discrete energies missing");
  }
  if (!(period_length > 0.0) || window == 0) throw DomainError("bad drift window");
  if (r.size() == 0 || r.times.back() < static_cast<double>(window) * period_length * (1.0 - 1e-12)) {
    throw DomainError("trajectory is shorter than the requested drift window");
  }

  DriftSeries series;
  series.period.resize(window);
  series.period_max.assign(window, 0.0);
  const double initial = sample(r, observable, 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double t = r.times[i] - r.times.front();
    std::size_t index = 0;
    if (t > 0.0) {
      const double cycles = std::ceil(t / period_length - 1e-9);
      index = cycles > 0.0 ? static_cast<std::size_t>(cycles) - 1 : 0;
    }
    if (index >= window) break;
    series.period_max[index] =
        std::max(series.period_max[index], std::abs(sample(r, observable, i) - initial));
  }

  series.running_max.resize(window);
  double running = 0.0;
  for (std::size_t k = 0; k < window; ++k) {
    series.period[k] = k;
    running = std::max(running, series.period_max[k]);
    series.running_max[k] = running;
  }

  if (window > 1) {
    const double n = static_cast<double>(window);
    const double mean_x = (n - 1.0) / 2.0;
    double mean_y = 0.0;
    for (double y : series.running_max) mean_y += y;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < window; ++k) {
      const double dx = static_cast<double>(k) - mean_x;
      sxy += dx * (series.running_max[k] - mean_y);
      sxx += dx * dx;
    }
    series.growth_rate = sxy / sxx;
  }
  return series;
}

StabilityScan stability_scan(double omega, double mass, std::span<const double> grid,
                             std::size_t steps) {
  if (!(omega > 0.0) || !(mass > 0.0)) throw DomainError("stability_scan needs omega, mass > 0");
  StabilityScan scan;
  const double momentum_scale = mass * omega;
  for (double hw : grid) {
    if (!(hw > 0.0)) throw DomainError("stability grid values must be positive");
    const TransferMatrix phi = transfer_matrix({mass, omega, hw / omega});
    PhasePoint point{0.0, 1.0};
    StabilityPoint result{hw, 1.0, true};
    for (std::size_t i = 0; i < steps; ++i) {
      point = step_harmonic(point, phi);
      const double norm = std::hypot(point.p / momentum_scale, point.q);
      result.max_norm_ratio = std::max(result.max_norm_ratio, norm);
      if (!(norm <= kBoundednessFactor)) {
        result.bounded = false;
        break;
      }
    }
    scan.points.push_back(result);
  }
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    if (!scan.points[i].bounded) {
      if (scan.points[i - 1].bounded) {
        scan.transition = std::make_pair(scan.points[i - 1].h_omega, scan.points[i].h_omega);
      }
      break;
    }
  }
  return scan;
}

}  // namespace lobatto
