#include "qgids/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgids {

bool StepPotential::is_zero() const {
  for (double v : values)
    if (v != 0.0) return false;
  return true;
}

double StepPotential::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double StepPotential::value_at(double t) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  size_t idx = it == breakpoints.begin() ? 0 : static_cast<size_t>(it - breakpoints.begin()) - 1;
  if (idx >= values.size()) idx = values.size() - 1;
  return values[idx];
}

void StepPotential::check() const {
  if (values.empty() || breakpoints.size() != values.size() + 1)
    throw std::invalid_argument("StepPotential: need k pieces and k+1 breakpoints");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw std::invalid_argument("StepPotential: breakpoints must span [0,1]");
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("StepPotential: breakpoints must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("StepPotential: values must be finite");
}

bool operator==(const StepPotential& a, const StepPotential& b) {
  return a.breakpoints == b.breakpoints && a.values == b.values;
}

}  // namespace qgids
