#pragma once

#include <array>

namespace lobatto {

/// Momentum/state pair at a mesh node.
struct PhasePoint {
  double p = 0.0;
  double q = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// State values at the four Lobatto nodes 0, xi, 1-xi, 1 of one time element.
struct ElementState {
  double left = 0.0;
  double xi = 0.0;
  double one_minus_xi = 0.0;
  double right = 0.0;

  std::array<double, 4> values() const { return {left, xi, one_minus_xi, right}; }

  static ElementState from(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

}  // namespace lobatto
