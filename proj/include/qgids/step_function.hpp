#pragma once

#include <cstdint>
#include <vector>

namespace qgids {

/// Right-continuous nondecreasing step function given by its jumps; used for
/// eigenvalue counting functions and their normalized versions. Heights are
/// integers for raw counts and fractional for averaged estimates; rho is the
/// normalization divisor applied on evaluation.
class StepFunction {
 public:
  StepFunction() = default;

  static StepFunction from_jumps(std::vector<double> positions, std::vector<double> heights, double rho);
  /// Group eigenvalues closer than merge_tol*(1+|lambda|) into one jump.
  static StepFunction from_values(const std::vector<double>& eigenvalues, double rho, double merge_tol = 1e-9);

  double value(double lambda) const;       // sum of heights at positions <= lambda, / rho
  double left_limit(double lambda) const;  // positions < lambda
  double rho() const { return rho_; }
  void set_rho(double rho) { rho_ = rho; }

  const std::vector<double>& positions() const { return pos_; }
  const std::vector<double>& heights() const { return h_; }
  std::size_t jump_count() const { return pos_.size(); }

  /// Jumps with normalized height >= min_height inside [lo, hi].
  std::vector<std::pair<double, double>> jumps(double min_height, double lo, double hi) const;

  /// Pointwise sum (merging jump sets); both sides are first de-normalized.
  static StepFunction merge(const std::vector<StepFunction>& parts, double rho);
  /// Scale every height (for seed averaging).
  StepFunction scaled(double factor) const;

 private:
  std::vector<double> pos_;  // ascending, unique
  std::vector<double> h_;    // positive
  double rho_ = 1.0;
  std::vector<double> cum_;  // cumulative raw heights
  void build_cumulative();
};

/// Counting functions of the unit interval: floor(sqrt(l)/pi) for l >= 0.
int dirichlet_reference(double lambda);
/// dirichlet_reference + [lambda >= 0].
int neumann_reference(double lambda);

/// Dirichlet interval of integer length L as a step function on
/// (-inf, lambda_max]: jumps at (k pi / L)^2.
StepFunction dirichlet_interval_counting(int length, double lambda_max);

/// sup |F - G| over [lo, hi], exact for step data: both functions are
/// evaluated at every merged jump position and its left limit.
double sup_distance(const StepFunction& f, const StepFunction& g, double lo, double hi);

/// Difference of a counting function and a multiple of the unit Dirichlet
/// reference: xi(lambda) = n(lambda)/1 - multiple * n_D(lambda). Bounded and
/// piecewise constant; evaluation is exact.
class ShiftFunction {
 public:
  ShiftFunction() = default;
  ShiftFunction(StepFunction counting, double dirichlet_multiple)
      : n_(std::move(counting)), multiple_(dirichlet_multiple) {}

  double value(double lambda) const;
  double left_limit(double lambda) const;
  double sup_norm(double lo, double hi) const;
  const StepFunction& counting() const { return n_; }
  double dirichlet_multiple() const { return multiple_; }

  /// sup |a - b| over [lo, hi], exact.
  static double sup_distance(const ShiftFunction& a, const ShiftFunction& b, double lo, double hi);

 private:
  StepFunction n_;  // evaluated with its own rho
  double multiple_ = 0.0;
  std::vector<double> anchors(double lo, double hi) const;
};

}  // namespace qgids
