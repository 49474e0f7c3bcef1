#include "lobatto_cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lobatto/analysis.hpp"
#include "lobatto/errors.hpp"
#include "lobatto/simulation.hpp"
#include "lobatto_cli/csv.hpp"

namespace lobatto::cli {

namespace {

// Destination for CSV: the requested file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'", path, 0);
      os_ = file_.get();
    }
  }

  std::ostream& stream() { return *os_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

void report_errors(const TrajectoryRecord& r, std::ostream& log) {
  fmt::print(log, "linf error p   {}\n", format_real(linf_error(r, Observable::momentum)));
  fmt::print(log, "linf error q   {}\n", format_real(linf_error(r, Observable::state)));
  fmt::print(log, "linf error H   {}\n", format_real(linf_error(r, Observable::energy)));
  if (r.discrete_energies) {
    fmt::print(log, "linf drift H_d {}\n", format_real(linf_error(r, Observable::discrete_energy)));
  }
}

int run_trajectory(const ExperimentConfig& c, std::ostream& data, std::ostream& log) {
  SimulationSpec spec = c.simulation(c.meshes_or_default(), c.periods);
  if (c.step) {
    spec.step = *c.step;
    spec.steps = static_cast<std::size_t>(
        std::ceil(static_cast<double>(c.periods) * spec.exact_period() / *c.step - 1e-9));
  }
  TrajectoryRecord record;
  Sink sink(c.out, data);
  try {
    simulate_into(spec, record);
  } catch (const SolverError& e) {
    write_trajectory_csv(sink.stream(), record);
    fmt::print(log, "solver failure: {}\n{} rows written before the failing step\n", e.what(),
               record.size());
    return kExitSolverFailure;
  }
  write_trajectory_csv(sink.stream(), record);
  fmt::print(log, "{} / {}: {} rows, h = {}\n", to_string(spec.system), to_string(spec.scheme),
             record.size(), format_real(spec.step));
  report_errors(record, log);
  return kExitSuccess;
}

int run_convergence(const ExperimentConfig& c, std::ostream& data, std::ostream& log) {
  std::vector<std::size_t> meshes;
  for (std::size_t i = 0, n = c.meshes_or_default(); i < c.levels; ++i, n *= 2) meshes.push_back(n);

  // Levels are independent; results are joined in mesh order.
  std::vector<std::future<TrajectoryRecord>> jobs;
  for (std::size_t n : meshes) {
    jobs.push_back(std::async(std::launch::async, [spec = c.simulation(n, c.periods)] {
      return simulate(spec);
    }));
  }
  std::vector<TrajectoryRecord> records;
  std::size_t completed = 0;
  std::optional<SolverError> failure;
  for (auto& job : jobs) {
    try {
      records.push_back(job.get());
      ++completed;
    } catch (const SolverError& e) {
      if (!failure) failure = e;
    }
  }
  if (failure) {
    fmt::print(log, "solver failure: {}\n{} of {} levels completed\n", failure->what(), completed,
               meshes.size());
    return kExitSolverFailure;
  }

  const ConvergenceTable table = make_convergence_table(meshes, records);
  Sink sink(c.out, data);
  write_convergence_csv(sink.stream(), table);
  for (const auto& row : table.rows) {
    fmt::print(log, "N = {:5d}  p {:.5e}  q {:.5e}  H {:.5e}", row.meshes, row.err_p, row.err_q,
               row.err_H);
    if (row.err_Hd) fmt::print(log, "  H_d {:.5e}", *row.err_Hd);
    if (row.order_p) fmt::print(log, "  orders {} {} {}", *row.order_p, *row.order_q, *row.order_H);
    fmt::print(log, "\n");
  }
  return kExitSuccess;
}

int run_drift(const ExperimentConfig& c, std::ostream& data, std::ostream& log) {
  SimulationSpec spec = c.simulation(c.meshes_or_default(), c.periods);
  const double period = spec.exact_period();
  spec.step = c.step_size();
  spec.steps = static_cast<std::size_t>(
      std::ceil(static_cast<double>(c.periods) * period / spec.step - 1e-9));
  const Observable observable = c.system == System::harmonic && c.scheme == Scheme::lobatto
                                    ? Observable::discrete_energy
                                    : Observable::energy;

  TrajectoryRecord record;
  try {
    simulate_into(spec, record);
  } catch (const SolverError& e) {
    fmt::print(log, "solver failure: {}\n{} steps completed\n", e.what(), record.size() - 1);
    return kExitSolverFailure;
  }
  const DriftSeries series = energy_drift_series(record, period, c.periods, observable);

  Sink sink(c.out, data);
  sink.stream() << "period,period_max,running_max\n";
  for (std::size_t k = 0; k < series.period.size(); ++k) {
    sink.stream() << series.period[k] << ',' << format_real(series.period_max[k]) << ','
                  << format_real(series.running_max[k]) << '\n';
  }

  const std::string name = observable == Observable::discrete_energy ? "H_d" : "H";
  const std::string meta = fmt::format(
      "observable={}\nstep={}\nperiod={}\nperiods={}\ngrowth_rate={}\n"
      "fit=ordinary least squares slope of running_max against period index\n",
      name, format_real(spec.step), format_real(period), c.periods, format_real(series.growth_rate));
  if (!sink.path().empty()) {
    std::ofstream(sink.path() + ".meta", std::ios::binary | std::ios::trunc) << meta;
  }
  fmt::print(log, "{}", meta);
  return kExitSuccess;
}

int run_stability(const ExperimentConfig& c, std::ostream& data, std::ostream& log) {
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((c.hw_max - c.hw_min) / c.hw_step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    const double hw = c.hw_min + static_cast<double>(i) * c.hw_step;
    grid.push_back(std::round(hw * 1e12) / 1e12);
  }

  const StabilityScan scan = stability_scan(c.omega_or_default(), c.mass, grid, c.scan_steps);
  Sink sink(c.out, data);
  sink.stream() << "h_omega,max_norm_ratio,bounded\n";
  for (const auto& pt : scan.points) {
    sink.stream() << format_real(pt.h_omega) << ',' << format_real(pt.max_norm_ratio) << ','
                  << (pt.bounded ? 1 : 0) << '\n';
  }
  if (scan.transition) {
    fmt::print(log, "stability transition between h*omega = {:.6g} and {:.6g}\n", scan.transition->first,
               scan.transition->second);
  } else {
    fmt::print(log, "no stability transition inside the grid\n");
  }
  return kExitSuccess;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& data, std::ostream& log) {
  switch (config.command) {
    case Command::trajectory:
      return run_trajectory(config, data, log);
    case Command::convergence:
      return run_convergence(config, data, log);
    case Command::drift:
      return run_drift(config, data, log);
    case Command::stability:
      return run_stability(config, data, log);
  }
  return kExitConfigError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& data, std::ostream& log) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    log << usage();
    return args.empty() ? kExitConfigError : kExitSuccess;
  }
  try {
    return run(parse_config(args), data, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace lobatto::cli
