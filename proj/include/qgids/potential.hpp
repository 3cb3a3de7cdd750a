#pragma once

#include <vector>

namespace qgids {

/// Step function on (0,1): breakpoints 0 = t_0 < ... < t_k = 1 with one
/// value per piece.
struct StepPotential {
  std::vector<double> breakpoints{0.0, 1.0};
  std::vector<double> values{0.0};

  static StepPotential zero() { return {}; }
  static StepPotential constant(double v) { return {{0.0, 1.0}, {v}}; }

  bool is_zero() const;
  bool is_constant() const { return values.size() == 1; }
  double sup_norm() const;
  double value_at(double t) const;
  void check() const;
};

bool operator==(const StepPotential& a, const StepPotential& b);

}  // namespace qgids
