#include "qgids/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qgids {

void StepFunction::build_cumulative() {
  cum_.resize(h_.size());
  double s = 0.0;
  for (size_t i = 0; i < h_.size(); ++i) {
    s += h_[i];
    cum_[i] = s;
  }
}

StepFunction StepFunction::from_jumps(std::vector<double> positions, std::vector<double> heights, double rho) {
  if (positions.size() != heights.size()) throw std::invalid_argument("step function: jump arrays mismatch");
  if (!(rho > 0)) throw std::invalid_argument("step function: rho must be positive");
  std::vector<size_t> idx(positions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return positions[a] < positions[b]; });
  StepFunction f;
  f.rho_ = rho;
  for (size_t i : idx) {
    if (!(heights[i] > 0)) continue;
    if (!f.pos_.empty() && positions[i] == f.pos_.back())
      f.h_.back() += heights[i];
    else {
      f.pos_.push_back(positions[i]);
      f.h_.push_back(heights[i]);
    }
  }
  f.build_cumulative();
  return f;
}

StepFunction StepFunction::from_values(const std::vector<double>& eigenvalues, double rho, double merge_tol) {
  std::vector<double> vals = eigenvalues;
  std::sort(vals.begin(), vals.end());
  StepFunction f;
  f.rho_ = rho;
  for (double v : vals) {
    if (!f.pos_.empty() && v - f.pos_.back() <= merge_tol * (1.0 + std::abs(v)))
      f.h_.back() += 1.0;
    else {
      f.pos_.push_back(v);
      f.h_.push_back(1.0);
    }
  }
  f.build_cumulative();
  return f;
}

double StepFunction::value(double lambda) const {
  auto it = std::upper_bound(pos_.begin(), pos_.end(), lambda);
  if (it == pos_.begin()) return 0.0;
  return cum_[static_cast<size_t>(it - pos_.begin()) - 1] / rho_;
}

double StepFunction::left_limit(double lambda) const {
  auto it = std::lower_bound(pos_.begin(), pos_.end(), lambda);
  if (it == pos_.begin()) return 0.0;
  return cum_[static_cast<size_t>(it - pos_.begin()) - 1] / rho_;
}

std::vector<std::pair<double, double>> StepFunction::jumps(double min_height, double lo, double hi) const {
  std::vector<std::pair<double, double>> out;
  for (size_t i = 0; i < pos_.size(); ++i) {
    if (pos_[i] < lo || pos_[i] > hi) continue;
    double h = h_[i] / rho_;
    if (h >= min_height) out.emplace_back(pos_[i], h);
  }
  return out;
}

StepFunction StepFunction::merge(const std::vector<StepFunction>& parts, double rho) {
  std::vector<double> pos, h;
  for (const StepFunction& p : parts) {
    pos.insert(pos.end(), p.pos_.begin(), p.pos_.end());
    h.insert(h.end(), p.h_.begin(), p.h_.end());
  }
  return from_jumps(std::move(pos), std::move(h), rho);
}

StepFunction StepFunction::scaled(double factor) const {
  StepFunction f = *this;
  for (double& x : f.h_) x *= factor;
  f.build_cumulative();
  return f;
}

int dirichlet_reference(double lambda) {
  if (lambda < 0) return 0;
  return static_cast<int>(std::floor(std::sqrt(lambda) / M_PI));
}

int neumann_reference(double lambda) { return dirichlet_reference(lambda) + (lambda >= 0 ? 1 : 0); }

StepFunction dirichlet_interval_counting(int length, double lambda_max) {
  if (length < 1) throw std::invalid_argument("dirichlet_interval_counting: length >= 1");
  std::vector<double> pos;
  for (int k = 1;; ++k) {
    double lam = std::pow(k * M_PI / length, 2);
    if (lam > lambda_max) break;
    pos.push_back(lam);
  }
  std::vector<double> ones(pos.size(), 1.0);
  return StepFunction::from_jumps(std::move(pos), std::move(ones), 1.0);
}

namespace {

std::vector<double> merged_anchors(const std::vector<double>& a, const std::vector<double>& b, double lo, double hi) {
  std::vector<double> m;
  m.reserve(a.size() + b.size() + 2);
  for (double x : a)
    if (x >= lo && x <= hi) m.push_back(x);
  for (double x : b)
    if (x >= lo && x <= hi) m.push_back(x);
  m.push_back(lo);
  m.push_back(hi);
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

}  // namespace

double sup_distance(const StepFunction& f, const StepFunction& g, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("sup_distance: empty range");
  double best = 0.0;
  for (double x : merged_anchors(f.positions(), g.positions(), lo, hi)) {
    best = std::max(best, std::abs(f.value(x) - g.value(x)));
    if (x > lo) best = std::max(best, std::abs(f.left_limit(x) - g.left_limit(x)));
  }
  return best;
}

double ShiftFunction::value(double lambda) const { return n_.value(lambda) - multiple_ * dirichlet_reference(lambda); }

double ShiftFunction::left_limit(double lambda) const {
  // left limit of n_D at lambda: subtract the jump when lambda = (k pi)^2
  double nd = dirichlet_reference(lambda);
  if (lambda >= 0) {
    double r = std::sqrt(lambda) / M_PI;
    double rr = std::round(r);
    if (rr >= 1 && std::abs(r - rr) < 1e-12) nd -= 1.0;
  }
  return n_.left_limit(lambda) - multiple_ * nd;
}

std::vector<double> ShiftFunction::anchors(double lo, double hi) const {
  std::vector<double> a(n_.positions());
  for (int k = 1;; ++k) {
    double lam = std::pow(k * M_PI, 2);
    if (lam > hi) break;
    a.push_back(lam);
  }
  if (lo <= 0 && 0 <= hi) a.push_back(0.0);
  return a;
}

double ShiftFunction::sup_norm(double lo, double hi) const {
  double best = 0.0;
  std::vector<double> a = anchors(lo, hi);
  a.push_back(lo);
  a.push_back(hi);
  for (double x : a) {
    if (x < lo || x > hi) continue;
    best = std::max(best, std::abs(value(x)));
    if (x > lo) best = std::max(best, std::abs(left_limit(x)));
  }
  return best;
}

double ShiftFunction::sup_distance(const ShiftFunction& a, const ShiftFunction& b, double lo, double hi) {
  std::vector<double> pts = a.anchors(lo, hi);
  std::vector<double> pb = b.anchors(lo, hi);
  pts.insert(pts.end(), pb.begin(), pb.end());
  pts.push_back(lo);
  pts.push_back(hi);
  double best = 0.0;
  for (double x : pts) {
    if (x < lo || x > hi) continue;
    best = std::max(best, std::abs(a.value(x) - b.value(x)));
    if (x > lo) best = std::max(best, std::abs(a.left_limit(x) - b.left_limit(x)));
  }
  return best;
}

}  // namespace qgids
