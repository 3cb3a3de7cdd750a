#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qgids {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

/// Self-adjoint vertex coupling A f(x) + B f'(x) = 0 on the boundary data of
/// the incident edge ends, rows/columns in the canonical incidence order.
/// Derivatives point from the vertex into each edge, so the pair (A,B) is
/// orientation independent.
struct VertexCondition {
  int degree = 0;
  MatC A, B;
};

struct ValidationResult {
  bool ok = false;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// rank [A|B] = degree and A B* Hermitian, both with relative tolerance 1e-10.
ValidationResult validate(const VertexCondition& c);

VertexCondition make_dirichlet(int degree);
VertexCondition make_neumann(int degree);
VertexCondition make_kirchhoff(int degree);
/// Continuity plus sum of inward derivatives = alpha * common value.
VertexCondition make_delta(int degree, double alpha);

/// Construct a condition from an explicit boundary subspace L (columns span
/// L inside C^{2 degree}); used by tests and cluster restriction.
VertexCondition condition_from_subspace(const Eigen::MatrixXcd& basis, int degree);

/// ker[A1|B1] == ker[A2|B2] as subspaces, tolerance 1e-10 on projectors.
bool subspace_equal(const VertexCondition& a, const VertexCondition& b, double tol = 1e-10);

/// Orthogonal projector onto ker [A|B] in C^{2 degree}.
MatC boundary_subspace_projector(const VertexCondition& c);

/// Normal form of a condition: P_D f(x) = 0, P_N f'(x) = 0 on range(P_N),
/// P_R f'(x) = Lam P_R f(x), with Lam Hermitian and invertible on range(P_R).
/// lam is stored as the full degree x degree matrix P_R Lam P_R.
struct FormTriple {
  MatC P_D, P_N, P_R;
  MatC lam;
  /// Orthonormal basis of the admissible value space (complement of the
  /// Dirichlet constraints); degree x rank columns. Trace reduction for the
  /// Galerkin assembly expands reduced vertex dofs through this basis.
  MatC value_basis;
  int rank_D = 0, rank_N = 0, rank_R = 0;
};

FormTriple to_form_triple(const VertexCondition& c);

/// Diagonal unitary built from per-end phases (entries exp(i phase)).
MatC phase_matrix(const std::vector<double>& end_phases);

/// Twisted condition (A u, B u); throws if u is not diagonal unitary.
VertexCondition twist(const VertexCondition& c, const MatC& u);

/// Percolation vertex blocks: flagged ends are pinned to value zero, the
/// remaining ends couple by a Kirchhoff block. All kept = Kirchhoff, all
/// flagged = Dirichlet, one kept end = Neumann on it.
VertexCondition assemble_from_end_flags(const std::vector<bool>& decoupled);

/// Finest partition of the ends such that the boundary subspace decomposes
/// as a direct sum over the parts. Parts are returned sorted.
std::vector<std::vector<int>> end_blocks(const VertexCondition& c, double tol = 1e-11);

/// Restriction of the condition to a decoupled block of ends.
VertexCondition restrict_to_ends(const VertexCondition& c, const std::vector<int>& ends);

/// True when the end sits in a singleton block whose condition pins the
/// value to zero (a Dirichlet loose end).
bool end_is_pinned(const VertexCondition& c, int end ,double tol = 1e-11);

}  // namespace qgids
