#include "qgids/operator_data.hpp"

#include <stdexcept>

namespace qgids {

bool OperatorData::has_twist() const {
  for (double p : twist_phases)
    if (p != 0.0) return true;
  return false;
}

double OperatorData::max_potential_norm() const {
  double m = 0.0;
  for (const StepPotential& p : potentials) m = std::max(m, p.sup_norm());
  return m;
}

void OperatorData::check() const {
  if (potentials.size() != graph.edges.size()) throw std::invalid_argument("operator data: potential per edge required");
  if (conditions.size() != graph.vertices.size())
    throw std::invalid_argument("operator data: condition per vertex required");
  if (!twist_phases.empty() && twist_phases.size() != graph.edges.size())
    throw std::invalid_argument("operator data: twist phase per edge required");
  for (const StepPotential& p : potentials) p.check();
  for (size_t vi = 0; vi < conditions.size(); ++vi) {
    if (conditions[vi].degree != graph.degree(static_cast<int>(vi)))
      throw std::invalid_argument("operator data: condition degree mismatch at vertex " +
                                  graph.vertices[vi].to_string());
    ValidationResult v = validate(conditions[vi]);
    if (!v)
      throw std::invalid_argument("operator data: invalid condition at " + graph.vertices[vi].to_string() + ": " +
                                  v.message);
  }
}

OperatorData make_operator_data(MetricSubgraph graph, std::vector<VertexCondition> conditions,
                                std::vector<StepPotential> potentials, std::vector<double> twists) {
  OperatorData d;
  d.graph = std::move(graph);
  d.conditions = std::move(conditions);
  if (potentials.empty()) potentials.assign(d.graph.edges.size(), StepPotential::zero());
  d.potentials = std::move(potentials);
  d.twist_phases = std::move(twists);
  d.check();
  return d;
}

}  // namespace qgids
