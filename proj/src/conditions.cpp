#include "qgids/conditions.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qgids {

namespace {

constexpr double kRankTol = 1e-10;

// Orthonormal basis of ker M via SVD, relative tolerance on singular values.
MatC kernel_basis(const MatC& m, double tol = kRankTol) {
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, scale)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Orthonormal basis of the column space.
MatC range_basis(const MatC& m, double tol = kRankTol) {
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double scale = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, scale)) ++rank;
  return svd.matrixU().leftCols(rank);
}

MatC ab_stacked(const VertexCondition& c) {
  MatC m(c.degree, 2 * c.degree);
  m << c.A, c.B;
  return m;
}

}  // namespace

ValidationResult validate(const VertexCondition& c) {
  if (c.degree < 1) return {false, "degree must be >= 1"};
  if (c.A.rows() != c.degree || c.A.cols() != c.degree || c.B.rows() != c.degree || c.B.cols() != c.degree)
    return {false, "A and B must be degree x degree"};
  MatC m = ab_stacked(c);
  Eigen::JacobiSVD<MatC> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(1.0, sv(0))) ++rank;
  if (rank != c.degree) return {false, "rank [A|B] = " + std::to_string(rank) + ", expected " + std::to_string(c.degree)};
  MatC h = c.A * c.B.adjoint();
  double scale = std::max(1.0, c.A.norm() * c.B.norm());
  if ((h - h.adjoint()).norm() > kRankTol * scale) return {false, "A B* is not Hermitian"};
  return {true, ""};
}

VertexCondition make_dirichlet(int degree) {
  if (degree < 1) throw std::invalid_argument("make_dirichlet: degree >= 1 required");
  return {degree, MatC::Identity(degree, degree), MatC::Zero(degree, degree)};
}

VertexCondition make_neumann(int degree) {
  if (degree < 1) throw std::invalid_argument("make_neumann: degree >= 1 required");
  return {degree, MatC::Zero(degree, degree), MatC::Identity(degree, degree)};
}

VertexCondition make_kirchhoff(int degree) { return make_delta(degree, 0.0); }

VertexCondition make_delta(int degree, double alpha) {
  if (degree < 1) throw std::invalid_argument("make_delta: degree >= 1 required");
  if (!std::isfinite(alpha)) throw std::invalid_argument("make_delta: alpha must be finite");
  MatC a = MatC::Zero(degree, degree), b = MatC::Zero(degree, degree);
  for (int i = 0; i + 1 < degree; ++i) {
    a(i, i) = 1.0;
    a(i, i + 1) = -1.0;
  }
  for (int j = 0; j < degree; ++j) b(degree - 1, j) = 1.0;
  a(degree - 1, 0) = -alpha;
  return {degree, a, b};
}

VertexCondition condition_from_subspace(const Eigen::MatrixXcd& basis, int degree) {
  if (basis.rows() != 2 * degree || basis.cols() != degree)
    throw std::invalid_argument("condition_from_subspace: basis must be 2 deg x deg");
  // Rows of [A|B] span the orthogonal complement of the subspace.
  MatC q = range_basis(basis);
  MatC full = MatC::Identity(2 * degree, 2 * degree) - q * q.adjoint();
  MatC rows = range_basis(full).adjoint();
  VertexCondition c;
  c.degree = degree;
  c.A = rows.leftCols(degree);
  c.B = rows.rightCols(degree);
  return c;
}

MatC boundary_subspace_projector(const VertexCondition& c) {
  MatC z = kernel_basis(ab_stacked(c));
  return z * z.adjoint();
}

bool subspace_equal(const VertexCondition& a, const VertexCondition& b, double tol) {
  if (a.degree != b.degree) return false;
  MatC pa = boundary_subspace_projector(a);
  MatC pb = boundary_subspace_projector(b);
  return (pa - pb).norm() <= tol * std::max(1.0, pa.norm());
}

FormTriple to_form_triple(const VertexCondition& c) {
  ValidationResult v = validate(c);
  if (!v) throw std::invalid_argument("to_form_triple: invalid condition: " + v.message);
  const int n = c.degree;
  MatC z = kernel_basis(ab_stacked(c));  // 2n x n, columns span L
  MatC zv = z.topRows(n), zp = z.bottomRows(n);

  // Admissible value space V1 = range of the value components; its
  // orthocomplement carries the Dirichlet constraints.
  MatC u1 = range_basis(zv);
  const int r1 = static_cast<int>(u1.cols());

  FormTriple t;
  t.value_basis = u1;
  MatC proj_v1 = u1 * u1.adjoint();
  t.P_D = MatC::Identity(n, n) - proj_v1;
  t.rank_D = n - r1;

  if (r1 == 0) {
    t.P_N = MatC::Zero(n, n);
    t.P_R = MatC::Zero(n, n);
    t.lam = MatC::Zero(n, n);
    t.rank_N = t.rank_R = 0;
    return t;
  }

  // Coupling map on V1: for each basis value u, pick (u, w) in L and project
  // w back to V1. Well defined because derivatives over the zero value are
  // exactly the orthocomplement of V1.
  MatC coeff = zv.completeOrthogonalDecomposition().solve(u1);  // n x r1 combo in L-basis
  MatC w = zp * coeff;                                          // derivatives
  MatC T = u1.adjoint() * w;                                    // r1 x r1, Hermitian
  T = Complex(0.5, 0) * (T + T.adjoint());

  Eigen::SelfAdjointEigenSolver<MatC> es(T);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<int> ker_idx, rng_idx;
  for (int i = 0; i < r1; ++i) {
    if (std::abs(ev(i)) <= kRankTol * scale)
      ker_idx.push_back(i);
    else
      rng_idx.push_back(i);
  }
  MatC un(r1, static_cast<int>(ker_idx.size())), ur(r1, static_cast<int>(rng_idx.size()));
  for (size_t i = 0; i < ker_idx.size(); ++i) un.col(static_cast<int>(i)) = es.eigenvectors().col(ker_idx[i]);
  for (size_t i = 0; i < rng_idx.size(); ++i) ur.col(static_cast<int>(i)) = es.eigenvectors().col(rng_idx[i]);

  MatC un_full = u1 * un, ur_full = u1 * ur;
  t.P_N = un_full * un_full.adjoint();
  t.P_R = ur_full * ur_full.adjoint();
  t.rank_N = static_cast<int>(ker_idx.size());
  t.rank_R = static_cast<int>(rng_idx.size());

  MatC lam_r = MatC::Zero(t.rank_R, t.rank_R);
  for (size_t i = 0; i < rng_idx.size(); ++i) lam_r(static_cast<int>(i), static_cast<int>(i)) = ev(rng_idx[i]);
  t.lam = ur_full * lam_r * ur_full.adjoint();
  return t;
}

MatC phase_matrix(const std::vector<double>& end_phases) {
  const int n = static_cast<int>(end_phases.size());
  MatC u = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i) u(i, i) = std::exp(Complex(0.0, end_phases[static_cast<size_t>(i)]));
  return u;
}

VertexCondition twist(const VertexCondition& c, const MatC& u) {
  if (u.rows() != c.degree || u.cols() != c.degree) throw std::invalid_argument("twist: size mismatch");
  for (int i = 0; i < c.degree; ++i)
    for (int j = 0; j < c.degree; ++j) {
      if (i == j) {
        if (std::abs(std::abs(u(i, i)) - 1.0) > 1e-12) throw std::invalid_argument("twist: u not unitary");
      } else if (std::abs(u(i, j)) > 0.0) {
        throw std::invalid_argument("twist: u not diagonal");
      }
    }
  return {c.degree, c.A * u, c.B * u};
}

VertexCondition assemble_from_end_flags(const std::vector<bool>& decoupled) {
  const int n = static_cast<int>(decoupled.size());
  if (n < 1) throw std::invalid_argument("assemble_from_end_flags: degree >= 1 required");
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (!decoupled[static_cast<size_t>(i)]) kept.push_back(i);
  MatC a = MatC::Zero(n, n), b = MatC::Zero(n, n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    if (decoupled[static_cast<size_t>(i)]) a(row++, i) = 1.0;
  for (size_t k = 0; k + 1 < kept.size(); ++k) {
    a(row, kept[k]) = 1.0;
    a(row, kept[k + 1]) = -1.0;
    ++row;
  }
  if (!kept.empty()) {
    for (int i : kept) b(row, i) = 1.0;
    ++row;
  }
  return {n, a, b};
}

std::vector<std::vector<int>> end_blocks(const VertexCondition& c, double tol) {
  const int n = c.degree;
  MatC pi = boundary_subspace_projector(c);
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto merge = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double coupling = std::abs(pi(i, j)) + std::abs(pi(i, j + n)) + std::abs(pi(i + n, j)) + std::abs(pi(i + n, j + n));
      if (coupling > tol) merge(i, j);
    }
  std::vector<std::vector<int>> blocks;
  std::vector<int> root_to_block(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_to_block[static_cast<size_t>(r)] < 0) {
      root_to_block[static_cast<size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(root_to_block[static_cast<size_t>(r)])].push_back(i);
  }
  return blocks;
}

VertexCondition restrict_to_ends(const VertexCondition& c, const std::vector<int>& ends) {
  const int n = c.degree;
  const int m = static_cast<int>(ends.size());
  MatC z = kernel_basis(ab_stacked(c));
  // Project the subspace onto the block coordinates; for a decoupled block
  // this is again a Lagrangian subspace of dimension m.
  MatC zb(2 * m, z.cols());
  for (int i = 0; i < m; ++i) {
    zb.row(i) = z.row(ends[static_cast<size_t>(i)]);
    zb.row(i + m) = z.row(ends[static_cast<size_t>(i)] + n);
  }
  MatC basis = range_basis(zb);
  if (basis.cols() != m)
    throw std::runtime_error("restrict_to_ends: block is not decoupled (dim " + std::to_string(basis.cols()) + ")");
  return condition_from_subspace(basis, m);
}

bool end_is_pinned(const VertexCondition& c, int end, double tol) {
  MatC pi = boundary_subspace_projector(c);
  const int n = c.degree;
  for (int j = 0; j < n; ++j) {
    if (j == end) continue;
    double coupling =
        std::abs(pi(end, j)) + std::abs(pi(end, j + n)) + std::abs(pi(end + n, j)) + std::abs(pi(end + n, j + n));
    if (coupling > tol) return false;
  }
  // Singleton block; pinned iff the block subspace is {(0, w)}: the value
  // diagonal of the projector vanishes.
  return std::abs(pi(end, end)) <= tol && std::abs(pi(end, end + n)) <= tol;
}

}  // namespace qgids
