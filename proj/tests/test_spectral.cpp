#include "doctest.h"
#include "qgids/assemble.hpp"
#include "qgids/ensemble.hpp"
#include "qgids/solve.hpp"
#include "qgids/step_function.hpp"

#include <cmath>

using namespace qgids;

namespace {

OperatorData interval_data(const VertexCondition& left, const VertexCondition& right, StepPotential pot = {}) {
  MetricSubgraph g = subgraph_from_edges(1, {EdgeId{Site{0}, 1}});
  std::vector<VertexCondition> conds(2);
  conds[static_cast<size_t>(g.vertex_index(Site{0}))] = left;
  conds[static_cast<size_t>(g.vertex_index(Site{1}))] = right;
  return make_operator_data(g, conds, {std::move(pot)});
}

OperatorData chain_data(int length, bool dirichlet_ends = true) {
  std::vector<EdgeId> edges;
  for (int i = 0; i < length; ++i) edges.push_back(EdgeId{Site{i}, 1});
  MetricSubgraph g = subgraph_from_edges(1, edges);
  std::vector<VertexCondition> conds(g.vertices.size());
  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    int deg = g.degree(static_cast<int>(vi));
    conds[vi] = deg == 2 ? make_kirchhoff(2) : (dirichlet_ends ? make_dirichlet(1) : make_neumann(1));
  }
  return make_operator_data(g, conds);
}

}  // namespace

TEST_CASE("dirichlet interval eigenvalues") {
  Discretization disc{64, 2};
  AssembledPencil p = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), disc);
  CHECK(p.dim == 127);
  CHECK(p.is_real);
  Spectrum s = eigenpairs(p, 100.0);
  REQUIRE(s.values.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    double exact = k * k * M_PI * M_PI;
    CHECK(std::abs(s.values[static_cast<size_t>(k - 1)] - exact) / exact < 1e-6);
  }
  // conforming: discrete eigenvalues approximate from above
  for (int k = 1; k <= 3; ++k) CHECK(s.values[static_cast<size_t>(k - 1)] >= k * k * M_PI * M_PI - 1e-12);
}

TEST_CASE("neumann interval has the zero mode") {
  AssembledPencil p = assemble(interval_data(make_neumann(1), make_neumann(1)), Discretization{32, 2});
  Spectrum s = eigenpairs(p, 50.0);
  REQUIRE(!s.values.empty());
  CHECK(std::abs(s.values[0]) < 1e-9);
  CHECK(count_below(p, 0.0) == 1);
}

TEST_CASE("two edges under kirchhoff equal the length-two interval") {
  AssembledPencil p = assemble(chain_data(2), Discretization{64, 2});
  Spectrum s = eigenpairs(p, 60.0);
  std::vector<double> exact;
  for (int k = 1; k * k * M_PI * M_PI / 4.0 <= 60.0; ++k) exact.push_back(k * k * M_PI * M_PI / 4.0);
  REQUIRE(s.values.size() == exact.size());
  for (size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(s.values[i] - exact[i]) / exact[i] < 1e-6);
}

TEST_CASE("counting references") {
  CHECK(dirichlet_reference(50.0) == 2);
  CHECK(neumann_reference(50.0) == 3);
  CHECK(dirichlet_reference(-1.0) == 0);
  CHECK(neumann_reference(-0.5) == 0);
  CHECK(dirichlet_reference(M_PI * M_PI) == 1);  // right continuous at the jump
  CHECK(neumann_reference(0.0) == 1);
}

TEST_CASE("count_below via inertia matches the closed form") {
  AssembledPencil p = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{64, 2});
  CHECK(count_below(p, 50.0) == 2);
  CHECK(count_below(p, -3.0) == 0);
  for (double lam : {5.0, 15.0, 45.0, 95.0, 200.0})
    CHECK(count_below(p, lam) == dirichlet_reference(lam));
  AssembledPencil pn = assemble(interval_data(make_neumann(1), make_neumann(1)), Discretization{64, 2});
  CHECK(count_below(pn, 0.0) == 1);
}

TEST_CASE("robin condition shifts the spectrum as the secular equation says") {
  // f'(0) = a f(0), dirichlet at 1: tan(k) = -k/a has a closed transcendental
  // form; check against a bisection on it
  double alpha = 2.0;
  AssembledPencil p = assemble(interval_data(make_delta(1, alpha), make_dirichlet(1)), Discretization{64, 2});
  Spectrum s = eigenpairs(p, 120.0);
  auto secular = [&](double k) { return std::sin(k) * alpha + k * std::cos(k); };
  std::vector<double> exact;
  double prev = 1e-6;
  for (double k = 1e-3; k * k <= 130.0; k += 1e-3) {
    if (secular(prev) * secular(k) < 0) {
      double a = prev, b = k;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (a + b);
        (secular(a) * secular(mid) <= 0 ? b : a) = mid;
      }
      double root = 0.5 * (a + b);
      if (root * root <= 120.0) exact.push_back(root * root);
    }
    prev = k;
  }
  REQUIRE(s.values.size() == exact.size());
  for (size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(s.values[i] - exact[i]) / exact[i] < 1e-5);
}

TEST_CASE("potential sandwich and constant shift") {
  // constant potential shifts eigenvalues exactly
  AssembledPencil p0 = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{32, 2});
  AssembledPencil p10 = assemble(interval_data(make_dirichlet(1), make_dirichlet(1), StepPotential::constant(10.0)),
                                 Discretization{32, 2});
  Spectrum s0 = eigenpairs(p0, 90.0), s10 = eigenpairs(p10, 100.0);
  REQUIRE(s0.values.size() == s10.values.size());
  for (size_t i = 0; i < s0.values.size(); ++i) CHECK(std::abs(s10.values[i] - (s0.values[i] + 10.0)) < 1e-8);
}

TEST_CASE("step potential mesh alignment") {
  StepPotential v{{0.0, 0.3, 1.0}, {-5.0, 10.0}};
  v.check();
  AssembledPencil p = assemble(interval_data(make_dirichlet(1), make_dirichlet(1), v), Discretization{16, 2});
  // every element sits inside one piece
  const auto& nodes = p.edge_blocks[0].nodes;
  bool has_break = false;
  for (double x : nodes) has_break |= x == 0.3;
  CHECK(has_break);
  // eigenvalues lie between the all-low and all-high shifted problems
  Spectrum s = eigenpairs(p, 60.0);
  REQUIRE(!s.values.empty());
  CHECK(s.values[0] >= M_PI * M_PI - 5.0 - 1e-9);
  CHECK(s.values[0] <= M_PI * M_PI + 10.0 + 1e-9);
}

TEST_CASE("mesh refinement is monotone from above") {
  for (int n : {8, 16, 32}) {
    AssembledPencil c = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{n, 2});
    AssembledPencil f = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{2 * n, 2});
    Spectrum sc = eigenpairs(c, 150.0), sf = eigenpairs(f, 150.0);
    for (size_t i = 0; i < std::min(sc.values.size(), sf.values.size()); ++i)
      CHECK(sf.values[i] <= sc.values[i] + 1e-11);
    for (double lam : {10.0, 50.0, 100.0}) CHECK(count_below(f, lam) >= count_below(c, lam));
  }
}

TEST_CASE("order three elements converge faster") {
  AssembledPencil p3 = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{32, 3});
  AssembledPencil p2 = assemble(interval_data(make_dirichlet(1), make_dirichlet(1)), Discretization{32, 2});
  Spectrum s3 = eigenpairs(p3, 400.0), s2 = eigenpairs(p2, 400.0);
  REQUIRE(s3.values.size() >= 6);
  for (int k = 1; k <= 6; ++k) {
    double exact = k * k * M_PI * M_PI;
    double e3 = std::abs(s3.values[static_cast<size_t>(k - 1)] - exact) / exact;
    double e2 = std::abs(s2.values[static_cast<size_t>(k - 1)] - exact) / exact;
    CHECK(e3 < 1e-6);
    CHECK(e3 < 0.2 * e2);
  }
}

TEST_CASE("banded and dense paths agree") {
  OperatorData chain = chain_data(12);
  AssembledPencil p = assemble(chain, Discretization{16, 2});
  REQUIRE(p.bandwidth <= 4);  // long chain assembles banded
  Spectrum banded = eigenpairs(p, 150.0, true);
  // force the dense path through a copy with an inflated bandwidth marker
  AssembledPencil q = p;
  q.bandwidth = 1000;
  Spectrum dense = eigenpairs(q, 150.0, true);
  REQUIRE(banded.values.size() == dense.values.size());
  for (size_t i = 0; i < banded.values.size(); ++i) CHECK(std::abs(banded.values[i] - dense.values[i]) < 1e-8);
}

TEST_CASE("inertia counting is consistent with extracted eigenvalues") {
  OperatorData chain = chain_data(6);
  AssembledPencil p = assemble(chain, Discretization{24, 2});
  AssembledPencil q = p;
  q.bandwidth = 1000;  // force the dense path
  Spectrum dense = eigenpairs(q, 120.0, false);
  for (double lam : {3.0, 30.0, 80.0, 120.0}) {
    int cnt = 0;
    for (double v : dense.values) cnt += v <= lam;
    CHECK(count_below(p, lam) == cnt);
  }
}

TEST_CASE("eigenvectors are mass orthonormal and restricted masses sum to one") {
  OperatorData chain = chain_data(4);
  AssembledPencil p = assemble(chain, Discretization{24, 2});
  Spectrum s = eigenpairs(p, 40.0, true);
  REQUIRE(s.has_vectors);
  REQUIRE(s.values.size() >= 2);
  Eigen::MatrixXcd gram = s.vectors.adjoint() * Eigen::MatrixXcd(p.M) * s.vectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-8);

  std::vector<int> all_edges{0, 1, 2, 3};
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXcd v = s.vectors.col(c);
    double total = restricted_mass(p, v, all_edges);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(restricted_mass(p, v, {}) == 0.0);
    double sum = 0;
    for (int e : all_edges) sum += restricted_mass(p, v, {e});
    CHECK(sum == doctest::Approx(total).epsilon(1e-12));
  }

  // symmetric ground state on the symmetric chain: half the edges carry 1/2
  Eigen::VectorXcd ground = s.vectors.col(0);
  CHECK(restricted_mass(p, ground, {0, 1}) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("twisted conditions versus the direct magnetic operator") {
  // Path of three edges with constant vector potentials. The two Galerkin
  // spaces differ by the gauge factor, so matched eigenvalues agree at the
  // discretization-error scale and the disagreement shrinks at fourth order
  // under refinement; counts agree away from jump neighborhoods.
  OperatorData path = chain_data(3);
  path.twist_phases = {0.9, -0.4, 1.7};
  double prev_gap = -1.0;
  for (int n : {16, 32, 64}) {
    AssembledPencil twisted = assemble(path, Discretization{n, 2});
    AssembledPencil direct = assemble_magnetic_direct(path, Discretization{n, 2});
    CHECK_FALSE(twisted.is_real);
    CHECK_FALSE(direct.is_real);
    Spectrum st = eigenpairs(twisted, 200.0), sd = eigenpairs(direct, 200.0);
    REQUIRE(st.values.size() == sd.values.size());
    double gap = 0.0;
    for (size_t i = 0; i < st.values.size(); ++i) gap = std::max(gap, std::abs(st.values[i] - sd.values[i]));
    if (prev_gap >= 0) CHECK(gap < prev_gap / 8.0);  // fourth order: /16 in theory
    prev_gap = gap;
    for (double lam = 0.0; lam <= 200.0; lam += 0.25) {
      bool near_jump = false;
      for (double v : st.values) near_jump |= std::abs(v - lam) < 0.05;
      for (double v : sd.values) near_jump |= std::abs(v - lam) < 0.05;
      if (near_jump) continue;
      CHECK(count_below(twisted, lam) == count_below(direct, lam));
    }
  }
  // the twisted spectrum itself is gauge invariant on a tree (exactly the
  // same pencil spectrum as phase-free, same discretization)
  AssembledPencil twisted = assemble(path, Discretization{24, 2});
  AssembledPencil plain = assemble(chain_data(3), Discretization{24, 2});
  Spectrum st = eigenpairs(twisted, 200.0), sp = eigenpairs(plain, 200.0);
  REQUIRE(st.values.size() == sp.values.size());
  for (size_t i = 0; i < st.values.size(); ++i) CHECK(std::abs(st.values[i] - sp.values[i]) < 1e-7);
}
