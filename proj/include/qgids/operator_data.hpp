#pragma once

#include <vector>

#include "qgids/conditions.hpp"
#include "qgids/lattice.hpp"
#include "qgids/potential.hpp"

namespace qgids {

/// Complete data of a finite-volume operator: -f'' + V f on every edge with
/// a self-adjoint condition at every vertex, plus optional magnetic edge
/// phases. Restriction bookkeeping records which vertices got their
/// Dirichlet condition from the finite-volume closure rather than from the
/// configuration itself, and which of those ends the configuration pins on
/// its own (needed to tell genuine compactly supported eigenfunctions from
/// restriction artifacts).
struct OperatorData {
  MetricSubgraph graph;
  std::vector<StepPotential> potentials;    // per edge
  std::vector<VertexCondition> conditions;  // per vertex
  std::vector<double> twist_phases;         // per edge; empty = no twist
  std::vector<char> closure_vertex;         // per vertex; empty = none
  std::vector<std::vector<char>> end_pinned_by_config;  // aligned with incidence at closure vertices

  bool has_twist() const;
  double max_potential_norm() const;
  void check() const;
};

/// Data for a single explicitly built graph with one condition catalog kind
/// everywhere; convenience for tests and experiments.
OperatorData make_operator_data(MetricSubgraph graph, std::vector<VertexCondition> conditions,
                                std::vector<StepPotential> potentials = {}, std::vector<double> twists = {});

}  // namespace qgids
