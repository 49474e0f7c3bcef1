#include "lobatto_cli/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "lobatto/errors.hpp"

namespace lobatto::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("trajectory CSV line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }
std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

std::string format_real(double value) { return fmt::format("{:.16e}", value); }

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& r) {
  r.validate();
  if (!r.exact) throw DomainError("trajectory CSV needs the exact solution");
  const bool with_hd = r.discrete_energies.has_value();
  os << "t,q,p,q_exact,p_exact,H" << (with_hd ? ",H_d" : "") << '\n';
  for (std::size_t i = 0; i < r.size(); ++i) {
    os << format_real(r.times[i]) << ',' << format_real(r.points[i].q) << ','
       << format_real(r.points[i].p) << ',' << format_real((*r.exact)[i].q) << ','
       << format_real((*r.exact)[i].p) << ',' << format_real(r.energies[i]);
    if (with_hd) os << ',' << format_real((*r.discrete_energies)[i]);
    os << '\n';
  }
}

TrajectoryRecord read_trajectory_csv(std::istream& is, const Potential& potential) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("trajectory CSV is empty");
  const bool with_hd = line == "t,q,p,q_exact,p_exact,H,H_d";
  if (!with_hd && line != "t,q,p,q_exact,p_exact,H") {
    throw DomainError("unexpected trajectory CSV header '" + line + "'");
  }
  const std::size_t columns = with_hd ? 7 : 6;

  TrajectoryRecord r;
  r.exact.emplace();
  r.exact_energies.emplace();
  if (with_hd) r.discrete_energies.emplace();
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != columns) {
      throw DomainError("trajectory CSV line " + std::to_string(number) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    r.times.push_back(parse_real(f[0], number));
    r.points.push_back({parse_real(f[2], number), parse_real(f[1], number)});
    const PhasePoint ref{parse_real(f[4], number), parse_real(f[3], number)};
    r.exact->push_back(ref);
    r.energies.push_back(parse_real(f[5], number));
    r.exact_energies->push_back(potential.energy(ref.p, ref.q));
    if (with_hd) r.discrete_energies->push_back(parse_real(f[6], number));
  }
  r.validate();
  return r;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "meshes,err_p,err_q,err_H,err_Hd,order_p,order_q,order_H\n";
  for (const auto& row : table.rows) {
    os << row.meshes << ',' << format_real(row.err_p) << ',' << format_real(row.err_q) << ','
       << format_real(row.err_H) << ',' << optional_real(row.err_Hd) << ','
       << optional_int(row.order_p) << ',' << optional_int(row.order_q) << ','
       << optional_int(row.order_H) << '\n';
  }
}

}  // namespace lobatto::cli
