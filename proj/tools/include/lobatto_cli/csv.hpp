#pragma once

#include <iosfwd>
#include <string>

#include "lobatto/analysis.hpp"
#include "lobatto/potential.hpp"

namespace lobatto::cli {

/// Lossless text form of a double: 17 significant digits, scientific notation.
std::string format_real(double value);

/// Header `t,q,p,q_exact,p_exact,H,H_d`; the H_d column only when the record has it.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record);

/// Inverse of write_trajectory_csv. Exact energies are recomputed from the exact columns
/// with `potential`, which is how the writer's producer defines them.
TrajectoryRecord read_trajectory_csv(std::istream& is, const Potential& potential);

/// Header `meshes,err_p,err_q,err_H,err_Hd,order_p,order_q,order_H`; absent values are empty.
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

}  // namespace lobatto::cli
