#include "qgids/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qgids {

void Discretization::check() const {
  if (elements_per_edge < 2) throw std::invalid_argument("discretization: need >= 2 elements per edge");
  if (order != 2 && order != 3) throw std::invalid_argument("discretization: element order must be 2 or 3");
}

namespace {

using Eigen::MatrixXd;

// Reference element matrices on [0,1] (exact rational entries). Stiffness
// scales with 1/h, mass with h, the convection matrix C_ij = int phi_i phi_j'
// is scale invariant.
MatrixXd ref_stiffness(int order) {
  if (order == 2) {
    MatrixXd k(3, 3);
    k << 7, -8, 1, -8, 16, -8, 1, -8, 7;
    return k / 3.0;
  }
  MatrixXd k(4, 4);
  k << 148, -189, 54, -13, -189, 432, -297, 54, 54, -297, 432, -189, -13, 54, -189, 148;
  return k / 40.0;
}

MatrixXd ref_mass(int order) {
  if (order == 2) {
    MatrixXd m(3, 3);
    m << 4, 2, -1, 2, 16, 2, -1, 2, 4;
    return m / 30.0;
  }
  MatrixXd m(4, 4);
  m << 128, 99, -36, 19, 99, 648, -81, -36, -36, -81, 648, 99, 19, -36, 99, 128;
  return m / 1680.0;
}

MatrixXd ref_convection(int order) {
  if (order == 2) {
    MatrixXd c(3, 3);
    c << -30, 40, -10, -40, 0, 40, 10, -40, 30;
    return c / 60.0;
  }
  MatrixXd c(4, 4);
  c << -40, 57, -24, 7, -57, 0, 81, -24, 24, -81, 0, 57, -7, 24, -57, 40;
  return c / 80.0;
}

// Element boundaries: the uniform n-subdivision refined by the potential
// breakpoints, so the potential is constant per element.
std::vector<double> aligned_nodes(const StepPotential& pot, int n) {
  std::vector<double> nodes;
  nodes.reserve(static_cast<size_t>(n) + pot.breakpoints.size());
  for (int i = 0; i <= n; ++i) nodes.push_back(static_cast<double>(i) / n);
  for (double b : pot.breakpoints) nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> out;
  for (double x : nodes)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  out.back() = 1.0;
  out.front() = 0.0;
  return out;
}

struct Scatter {
  // local dof -> weighted global dofs (empty = constrained to zero)
  std::vector<std::pair<int, Complex>> terms;
};

struct Builder {
  std::vector<Eigen::Triplet<Complex>> k_trip, m_trip;
  double max_imag = 0.0;
  int bandwidth = 0;

  void add(std::vector<Eigen::Triplet<Complex>>& trip, int i, int j, Complex v) {
    if (v == Complex(0.0, 0.0)) return;
    trip.emplace_back(i, j, v);
    max_imag = std::max(max_imag, std::abs(v.imag()));
    bandwidth = std::max(bandwidth, std::abs(i - j));
  }

  void add_block(const Eigen::MatrixXcd& local, const std::vector<Scatter>& sc, bool to_mass) {
    auto& trip = to_mass ? m_trip : k_trip;
    for (int a = 0; a < local.rows(); ++a)
      for (const auto& [gi, wi] : sc[static_cast<size_t>(a)].terms)
        for (int b = 0; b < local.cols(); ++b)
          for (const auto& [gj, wj] : sc[static_cast<size_t>(b)].terms)
            add(trip, gi, gj, std::conj(wi) * local(a, b) * wj);
  }
};

AssembledPencil assemble_impl(const OperatorData& data, const Discretization& disc, bool magnetic_direct) {
  disc.check();
  data.check();
  const MetricSubgraph& g = data.graph;
  const int order = disc.order;
  const bool twisted = !magnetic_direct && data.has_twist();

  AssembledPencil p;
  p.order = order;
  p.edge_blocks.resize(g.edges.size());
  p.vertex_blocks.resize(g.vertices.size());

  // Form triples per vertex; conditions are twisted first when edge phases
  // are present (magnetic data enters the conditions, not the edge terms).
  std::vector<FormTriple> triples(g.vertices.size());
  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    VertexCondition c = data.conditions[vi];
    if (twisted) {
      std::vector<double> phases(g.incidence[vi].size(), 0.0);
      for (size_t i = 0; i < g.incidence[vi].size(); ++i) {
        const EndRef& end = g.incidence[vi][i];
        if (!end.at_start) phases[i] = data.twist_phases[static_cast<size_t>(end.edge)];
      }
      c = twist(c, phase_matrix(phases));
    }
    triples[vi] = to_form_triple(c);
  }

  // Dof layout: walk edges in order; vertex value dofs are created when a
  // vertex is first met, then the edge interior dofs. Keeps chains banded.
  int next_dof = 0;
  auto ensure_vertex = [&](int vi) {
    AssembledPencil::VertexBlock& vb = p.vertex_blocks[static_cast<size_t>(vi)];
    if (vb.count > 0 || vb.first_dof == -2) return;
    const MatC& basis = triples[static_cast<size_t>(vi)].value_basis;
    if (basis.cols() == 0) {
      vb.first_dof = -2;  // fully pinned
      return;
    }
    vb.first_dof = next_dof;
    vb.count = static_cast<int>(basis.cols());
    vb.value_basis = basis;
    next_dof += vb.count;
  };

  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    AssembledPencil::EdgeBlock& eb = p.edge_blocks[ei];
    eb.nodes = aligned_nodes(data.potentials[ei], disc.elements_per_edge);
    const size_t nel = eb.nodes.size() - 1;
    eb.pot.resize(nel);
    for (size_t k = 0; k < nel; ++k) eb.pot[k] = data.potentials[ei].value_at(0.5 * (eb.nodes[k] + eb.nodes[k + 1]));

    int sv = g.vertex_index(g.edges[ei].start());
    int tv = g.vertex_index(g.edges[ei].target());
    ensure_vertex(sv);
    eb.trace_vertex[0] = p.vertex_blocks[static_cast<size_t>(sv)].count > 0 ? sv : -1;
    eb.interior.resize(nel * static_cast<size_t>(order) - 1);
    for (size_t i = 0; i < eb.interior.size(); ++i) eb.interior[i] = next_dof++;
    ensure_vertex(tv);
    eb.trace_vertex[1] = p.vertex_blocks[static_cast<size_t>(tv)].count > 0 ? tv : -1;

    // row of this end inside the vertex incidence (canonical order)
    for (int side = 0; side < 2; ++side) {
      int vv = side == 0 ? sv : tv;
      const auto& inc = g.incidence[static_cast<size_t>(vv)];
      for (size_t i = 0; i < inc.size(); ++i)
        if (inc[i].edge == static_cast<int>(ei) && inc[i].at_start == (side == 0)) eb.end_row[side] = static_cast<int>(i);
    }
  }
  p.dim = next_dof;

  Builder bld;
  const MatrixXd kr = ref_stiffness(order), mr = ref_mass(order), cr = ref_convection(order);
  const MatrixXd cskew = cr - cr.transpose();

  auto end_scatter = [&](const AssembledPencil::EdgeBlock& eb, int side) {
    Scatter s;
    if (eb.trace_vertex[side] < 0) return s;  // pinned to zero
    const AssembledPencil::VertexBlock& vb = p.vertex_blocks[static_cast<size_t>(eb.trace_vertex[side])];
    for (int k = 0; k < vb.count; ++k) {
      Complex w = vb.value_basis(eb.end_row[side], k);
      if (std::abs(w) > 0.0) s.terms.emplace_back(vb.first_dof + k, w);
    }
    return s;
  };

  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    const AssembledPencil::EdgeBlock& eb = p.edge_blocks[ei];
    const size_t nel = eb.nodes.size() - 1;
    const double a = magnetic_direct && !data.twist_phases.empty() ? data.twist_phases[ei] : 0.0;

    // nodal scatter along the edge: start trace, interiors, end trace
    std::vector<Scatter> nodal(nel * static_cast<size_t>(order) + 1);
    nodal.front() = end_scatter(eb, 0);
    nodal.back() = end_scatter(eb, 1);
    for (size_t i = 0; i < eb.interior.size(); ++i) nodal[i + 1].terms.emplace_back(eb.interior[i], Complex(1.0, 0.0));

    for (size_t k = 0; k < nel; ++k) {
      const double h = eb.nodes[k + 1] - eb.nodes[k];
      Eigen::MatrixXcd klocal = (kr / h + (eb.pot[k] + a * a) * mr * h).cast<Complex>();
      if (a != 0.0) klocal += Complex(0.0, a) * cskew.cast<Complex>();
      Eigen::MatrixXcd mlocal = (mr * h).cast<Complex>();
      std::vector<Scatter> sc(static_cast<size_t>(order) + 1);
      for (int loc = 0; loc <= order; ++loc) sc[static_cast<size_t>(loc)] = nodal[k * static_cast<size_t>(order) + static_cast<size_t>(loc)];
      bld.add_block(klocal, sc, false);
      bld.add_block(mlocal, sc, true);
    }
  }

  // Robin coupling per vertex: y* (U^H lam U) y on the surviving value dofs
  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    const AssembledPencil::VertexBlock& vb = p.vertex_blocks[vi];
    if (vb.count == 0) continue;
    if (triples[vi].rank_R == 0) continue;
    MatC coup = vb.value_basis.adjoint() * triples[vi].lam * vb.value_basis;
    for (int i = 0; i < vb.count; ++i)
      for (int j = 0; j < vb.count; ++j) bld.add(bld.k_trip, vb.first_dof + i, vb.first_dof + j, coup(i, j));
  }

  p.K.resize(p.dim, p.dim);
  p.M.resize(p.dim, p.dim);
  p.K.setFromTriplets(bld.k_trip.begin(), bld.k_trip.end());
  p.M.setFromTriplets(bld.m_trip.begin(), bld.m_trip.end());
  p.is_real = bld.max_imag == 0.0;
  p.bandwidth = bld.bandwidth;
  return p;
}

}  // namespace

AssembledPencil assemble(const OperatorData& data, const Discretization& disc) {
  return assemble_impl(data, disc, false);
}

AssembledPencil assemble_magnetic_direct(const OperatorData& data, const Discretization& disc) {
  return assemble_impl(data, disc, true);
}

double restricted_mass(const AssembledPencil& p, const Eigen::VectorXcd& v, const std::vector<int>& edges) {
  if (v.size() != p.dim) throw std::invalid_argument("restricted_mass: vector size mismatch");
  const MatrixXd mr = ref_mass(p.order);
  double total = 0.0;
  for (int ei : edges) {
    if (ei < 0 || ei >= static_cast<int>(p.edge_blocks.size()))
      throw std::invalid_argument("restricted_mass: edge index out of range");
    const AssembledPencil::EdgeBlock& eb = p.edge_blocks[static_cast<size_t>(ei)];
    const size_t nel = eb.nodes.size() - 1;
    const int order = p.order;

    // nodal values along the edge, composing trace values through the bases
    std::vector<Complex> nodal(nel * static_cast<size_t>(order) + 1, Complex(0, 0));
    for (int side = 0; side < 2; ++side) {
      if (eb.trace_vertex[side] < 0) continue;
      const AssembledPencil::VertexBlock& vb = p.vertex_blocks[static_cast<size_t>(eb.trace_vertex[side])];
      Complex val(0, 0);
      for (int k = 0; k < vb.count; ++k) val += vb.value_basis(eb.end_row[side], k) * v(vb.first_dof + k);
      (side == 0 ? nodal.front() : nodal.back()) = val;
    }
    for (size_t i = 0; i < eb.interior.size(); ++i) nodal[i + 1] = v(eb.interior[i]);

    for (size_t k = 0; k < nel; ++k) {
      const double h = eb.nodes[k + 1] - eb.nodes[k];
      for (int a = 0; a <= order; ++a)
        for (int b = 0; b <= order; ++b)
          total += (std::conj(nodal[k * static_cast<size_t>(order) + static_cast<size_t>(a)]) * mr(a, b) * h *
                    nodal[k * static_cast<size_t>(order) + static_cast<size_t>(b)])
                       .real();
    }
  }
  return total;
}

}  // namespace qgids
