#pragma once

#include <Eigen/Sparse>

#include "qgids/operator_data.hpp"

namespace qgids {

/// Conforming Galerkin discretization: per edge, `elements_per_edge`
/// uniform pieces refined so that every potential breakpoint is a mesh node
/// (the potential is then constant on each element), with Lagrange elements
/// of the given polynomial degree.
struct Discretization {
  int elements_per_edge = 64;
  int order = 2;  // polynomial degree, 2 or 3

  void check() const;
};

/// Hermitian pencil (K, M) of the operator after eliminating the Dirichlet
/// trace constraints exactly. Vertex coupling terms enter K through the
/// Robin part of the form triple. Bookkeeping retains enough structure to
/// evaluate edge-restricted masses of eigenvectors.
struct AssembledPencil {
  Eigen::SparseMatrix<Complex> K, M;
  int dim = 0;
  bool is_real = true;
  int bandwidth = 0;

  struct EdgeBlock {
    std::vector<double> nodes;     // element boundaries in [0,1]
    std::vector<double> pot;       // potential value per element
    std::vector<int> interior;     // global indices of interior dofs, in order
    int trace_vertex[2] = {-1, -1};  // vertex index at start/end, -1 if no trace dofs survive there
    int end_row[2] = {-1, -1};       // row of this end within the vertex value basis
  };
  struct VertexBlock {
    int first_dof = -1;  // -1 when no value dofs survive (full Dirichlet part)
    int count = 0;
    MatC value_basis;  // degree x count
  };
  std::vector<EdgeBlock> edge_blocks;
  std::vector<VertexBlock> vertex_blocks;
  int order = 2;
};

AssembledPencil assemble(const OperatorData& data, const Discretization& disc);

/// Direct first-order magnetic pencil -(d/dt - i a_e)^2 + V with constant
/// a_e = twist phase per edge and the *untwisted* vertex conditions; used as
/// the gauge-equivalence oracle against `assemble` on twisted conditions.
AssembledPencil assemble_magnetic_direct(const OperatorData& data, const Discretization& disc);

/// Mass of a vector restricted to a set of edges: the exact L2 content of
/// the finite element function on those edges. Sums to the full M-norm over
/// a partition of the edge set.
double restricted_mass(const AssembledPencil& p, const Eigen::VectorXcd& v, const std::vector<int>& edges);

}  // namespace qgids
