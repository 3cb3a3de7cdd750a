#pragma once

#include <cstdint>
#include <vector>

#include "qgids/operator_data.hpp"
#include "qgids/rng.hpp"

namespace qgids {

enum class EnsembleKind { iid, site_percolation, edge_percolation, junction_percolation };

/// Catalog label for the condition alphabet of iid ensembles.
struct ConditionLabel {
  enum Kind { dirichlet, neumann, kirchhoff, delta, matrix } kind = kirchhoff;
  double alpha = 0.0;
  MatC A, B;  // used by the matrix kind only, sized for degree 2d

  VertexCondition instantiate(int degree) const;
  bool pins_ends() const { return kind == dirichlet; }
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::site_percolation;
  int d = 1;
  double p = 0.5;  // site/junction: Kirchhoff probability; edge: p0 (edge kept)
  std::vector<StepPotential> potential_alphabet;
  std::vector<double> potential_weights;
  std::vector<ConditionLabel> condition_alphabet;
  std::vector<double> condition_weights;
  uint64_t seed = 0;

  void check() const;
  EnsembleSpec with_seed(uint64_t s) const {
    EnsembleSpec copy = *this;
    copy.seed = s;
    return copy;
  }
};

EnsembleSpec site_percolation_spec(int d, double p, uint64_t seed);
EnsembleSpec edge_percolation_spec(int d, double p0, uint64_t seed);
EnsembleSpec junction_percolation_spec(int d, double p, uint64_t seed);
EnsembleSpec iid_spec(int d, std::vector<StepPotential> potentials, std::vector<double> potential_weights,
                      std::vector<ConditionLabel> conditions, std::vector<double> condition_weights, uint64_t seed);

/// Per-site symbol: potential label per anchored direction plus the
/// condition content (label index for site/iid ensembles, a flag word for
/// the edge and junction percolation ensembles).
struct SiteSymbol {
  std::array<uint8_t, kMaxDim> potential{};
  uint32_t cond = 0;

  friend bool operator==(const SiteSymbol& a, const SiteSymbol& b) { return a.cond == b.cond && a.potential == b.potential; }
  friend bool operator<(const SiteSymbol& a, const SiteSymbol& b) {
    if (a.cond != b.cond) return a.cond < b.cond;
    return a.potential < b.potential;
  }
};

/// Seeded colouring over a finite domain. Symbols are pure functions of
/// (seed, site); re-querying or overlapping samples always agree.
class Colouring {
 public:
  Colouring(EnsembleSpec spec, Region domain);

  const EnsembleSpec& spec() const { return spec_; }
  const Region& domain() const { return domain_; }
  bool defined_at(const Site& x) const { return domain_.contains(x); }
  SiteSymbol at(const Site& x) const;

 private:
  EnsembleSpec spec_;
  Region domain_;
  CounterRng rng_;
};

/// Colouring over the region dilated by `margin` in the sup norm.
Colouring sample(const EnsembleSpec& spec, const Region& region, int margin);

/// Finite-volume operator data at Q: potentials from the anchor symbols,
/// inner vertex conditions from the ensemble content, Dirichlet closure at
/// boundary vertices. Edge and junction ensembles need margin >= 1.
OperatorData realize(const Colouring& colouring, const Region& q);

}  // namespace qgids
