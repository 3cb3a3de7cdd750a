#include "qgids/secular.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgids {

namespace {

// Normalized fundamental solutions of -f'' + v f = lambda f on [0,1]:
// c(0)=1, c'(0)=0 and s(0)=0, s'(0)=1; entire in z = lambda - v.
void fundamental(double z, double& c1, double& s1) {
  if (z > 1e-8) {
    double k = std::sqrt(z);
    c1 = std::cos(k);
    s1 = std::sin(k) / k;
  } else if (z < -1e-8) {
    double k = std::sqrt(-z);
    c1 = std::cosh(k);
    s1 = std::sinh(k) / k;
  } else {
    // series around z = 0: cos sqrt(z) and sin sqrt(z)/sqrt(z)
    c1 = 1.0 - z / 2.0 + z * z / 24.0;
    s1 = 1.0 - z / 6.0 + z * z / 120.0;
  }
}

struct SecularSystem {
  const OperatorData& data;
  std::vector<double> pot;  // constant potential per edge
  int m;

  explicit SecularSystem(const OperatorData& d) : data(d), m(static_cast<int>(d.graph.edges.size())) {
    if (m > 8) throw std::invalid_argument("secular_oracle: at most 8 edges");
    for (const StepPotential& p : d.potentials) {
      if (!p.is_constant()) throw std::invalid_argument("secular_oracle: potentials must be constant per edge");
      pot.push_back(p.values[0]);
    }
  }

  // Rows: per vertex, A u v + B u v' applied to the boundary data of the
  // per-edge coefficients (a_e, b_e); u carries the twist phases.
  MatC matrix(double lambda) const {
    const MetricSubgraph& g = data.graph;
    MatC s = MatC::Zero(2 * m, 2 * m);
    int row0 = 0;
    for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
      const auto& inc = g.incidence[vi];
      const int deg = static_cast<int>(inc.size());
      MatC values = MatC::Zero(deg, 2 * m), derivs = MatC::Zero(deg, 2 * m);
      for (int i = 0; i < deg; ++i) {
        const int e = inc[static_cast<size_t>(i)].edge;
        double c1, s1;
        fundamental(lambda - pot[static_cast<size_t>(e)], c1, s1);
        Complex u(1.0, 0.0);
        if (inc[static_cast<size_t>(i)].at_start) {
          values(i, 2 * e) = 1.0;
          derivs(i, 2 * e + 1) = 1.0;
        } else {
          // f(1) = a c1 + b s1 ; inward derivative -(a c1' + b s1') with
          // c1' = -(lambda - v) s1 and s1' = c1
          values(i, 2 * e) = c1;
          values(i, 2 * e + 1) = s1;
          derivs(i, 2 * e) = (lambda - pot[static_cast<size_t>(e)]) * s1;
          derivs(i, 2 * e + 1) = -c1;
          if (!data.twist_phases.empty()) u = std::exp(Complex(0.0, data.twist_phases[static_cast<size_t>(e)]));
        }
        values.row(i) *= u;
        derivs.row(i) *= u;
      }
      const VertexCondition& c = data.conditions[vi];
      s.block(row0, 0, deg, 2 * m) = c.A * values + c.B * derivs;
      row0 += deg;
    }
    return s;
  }

  double sigma_min(double lambda, double* sigma_max = nullptr, int* near_zero = nullptr) const {
    Eigen::JacobiSVD<MatC> svd(matrix(lambda));
    const auto& sv = svd.singularValues();
    if (sigma_max) *sigma_max = sv(0);
    if (near_zero) {
      *near_zero = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) < 1e-7 * std::max(1.0, sv(0))) ++*near_zero;
    }
    return sv(sv.size() - 1);
  }

  double det_real(double lambda, bool& is_real) const {
    Complex d = matrix(lambda).determinant();
    if (std::abs(d.imag()) > 1e-8 * (1.0 + std::abs(d.real()))) is_real = false;
    return d.real();
  }
};

}  // namespace

SecularSpectrum secular_oracle(const OperatorData& data, double lambda_min, double lambda_max) {
  data.check();
  SecularSystem sys(data);

  // scan grid: fine enough that consecutive distinct eigenvalues of a graph
  // with total length m rarely share a cell; clustered survivors are flagged
  const double total_len = static_cast<double>(sys.m);
  const double step = std::min(0.2 * std::pow(M_PI / total_len, 2), (lambda_max - lambda_min) / 400.0);
  std::vector<double> grid;
  for (double x = lambda_min; x < lambda_max + step; x += step) grid.push_back(std::min(x, lambda_max));

  // pass 1: sign changes of the real determinant (odd-multiplicity roots)
  std::vector<double> roots;
  bool use_det = !data.has_twist();
  if (use_det) {
    bool ok = true;
    double prev = sys.det_real(grid[0], ok);
    for (size_t i = 1; i < grid.size() && ok; ++i) {
      double cur = sys.det_real(grid[i], ok);
      if (prev != 0.0 && cur != 0.0 && std::signbit(prev) != std::signbit(cur)) {
        double a = grid[i - 1], b = grid[i];
        double fa = prev;
        for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
          double mid = 0.5 * (a + b);
          double fm = sys.det_real(mid, ok);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if (std::signbit(fa) == std::signbit(fm)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      prev = cur;
    }
  }

  // pass 2: local minima of the smallest singular value (catches
  // even-multiplicity roots that do not flip the determinant sign)
  std::vector<double> sig(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) sig[i] = sys.sigma_min(grid[i]);
  double scale = *std::max_element(sig.begin(), sig.end());
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(sig[i] <= sig[i - 1] && sig[i] <= sig[i + 1] && sig[i] < 1e-2 * std::max(1.0, scale))) continue;
    // golden-section refinement of sigma_min
    double a = grid[i - 1], b = grid[i + 1];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sys.sigma_min(x1), f2 = sys.sigma_min(x2);
    for (int it = 0; it < 120 && b - a > 1e-13 * (1.0 + std::abs(b)); ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = sys.sigma_min(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = sys.sigma_min(x2);
      }
    }
    double root = 0.5 * (a + b);
    double smax = 1.0;
    double smin = sys.sigma_min(root, &smax);
    if (smin < 1e-6 * std::max(1.0, smax)) roots.push_back(root);
  }

  std::sort(roots.begin(), roots.end());

  // dedupe and expand by multiplicity from the singular value count
  SecularSpectrum out;
  std::vector<double> distinct;
  for (double r : roots) {
    if (!distinct.empty() && r - distinct.back() <= 1e-8 * (1.0 + std::abs(r))) continue;
    distinct.push_back(r);
  }
  for (size_t i = 0; i + 1 < distinct.size(); ++i)
    if (distinct[i + 1] - distinct[i] < 1e-5 * (1.0 + std::abs(distinct[i]))) out.clustered_roots = true;
  for (double r : distinct) {
    if (r < lambda_min || r > lambda_max) continue;
    int mult = 0;
    sys.sigma_min(r, nullptr, &mult);
    if (mult == 0) mult = 1;
    for (int k = 0; k < mult; ++k) out.values.push_back(r);
  }
  return out;
}

}  // namespace qgids
