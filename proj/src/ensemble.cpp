#include "qgids/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qgids {

VertexCondition ConditionLabel::instantiate(int degree) const {
  switch (kind) {
    case dirichlet:
      return make_dirichlet(degree);
    case neumann:
      return make_neumann(degree);
    case kirchhoff:
      return make_kirchhoff(degree);
    case delta:
      return make_delta(degree, alpha);
    case matrix: {
      if (A.rows() != degree) throw std::invalid_argument("matrix condition label has wrong degree");
      VertexCondition c{degree, A, B};
      ValidationResult v = validate(c);
      if (!v) throw std::invalid_argument("matrix condition label invalid: " + v.message);
      return c;
    }
  }
  throw std::logic_error("unreachable");
}

void EnsembleSpec::check() const {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("ensemble: dimension out of range");
  if (kind == EnsembleKind::iid) {
    if (potential_alphabet.empty() || condition_alphabet.empty())
      throw std::invalid_argument("iid ensemble: alphabets must be nonempty");
    if (potential_alphabet.size() != potential_weights.size() || condition_alphabet.size() != condition_weights.size())
      throw std::invalid_argument("iid ensemble: weights must match alphabets");
    auto check_weights = [](const std::vector<double>& w) {
      double s = 0;
      for (double x : w) {
        if (!(x > 0)) throw std::invalid_argument("ensemble: weights must be positive");
        s += x;
      }
      if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("ensemble: weights must sum to 1");
    };
    check_weights(potential_weights);
    check_weights(condition_weights);
    for (const StepPotential& v : potential_alphabet) v.check();
    if (potential_alphabet.size() > 255 || condition_alphabet.size() > 255)
      throw std::invalid_argument("ensemble: alphabet too large");
  } else {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ensemble: probability out of [0,1]");
  }
}

EnsembleSpec site_percolation_spec(int d, double p, uint64_t seed) {
  EnsembleSpec s;
  s.kind = EnsembleKind::site_percolation;
  s.d = d;
  s.p = p;
  s.seed = seed;
  s.check();
  return s;
}

EnsembleSpec edge_percolation_spec(int d, double p0, uint64_t seed) {
  EnsembleSpec s;
  s.kind = EnsembleKind::edge_percolation;
  s.d = d;
  s.p = p0;
  s.seed = seed;
  s.check();
  return s;
}

EnsembleSpec junction_percolation_spec(int d, double p, uint64_t seed) {
  EnsembleSpec s;
  s.kind = EnsembleKind::junction_percolation;
  s.d = d;
  s.p = p;
  s.seed = seed;
  s.check();
  return s;
}

EnsembleSpec iid_spec(int d, std::vector<StepPotential> potentials, std::vector<double> potential_weights,
                      std::vector<ConditionLabel> conditions, std::vector<double> condition_weights, uint64_t seed) {
  EnsembleSpec s;
  s.kind = EnsembleKind::iid;
  s.d = d;
  s.potential_alphabet = std::move(potentials);
  s.potential_weights = std::move(potential_weights);
  s.condition_alphabet = std::move(conditions);
  s.condition_weights = std::move(condition_weights);
  s.seed = seed;
  s.check();
  return s;
}

namespace {

// Random field indices; frozen as part of the sampling contract.
constexpr uint32_t kFieldCondition = 0;
constexpr uint32_t kFieldPotentialBase = 1;  // +j-1 per direction

uint8_t pick_weighted(const std::vector<double>& weights, double u) {
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<uint8_t>(i);
  }
  return static_cast<uint8_t>(weights.size() - 1);
}

}  // namespace

Colouring::Colouring(EnsembleSpec spec, Region domain)
    : spec_(std::move(spec)), domain_(std::move(domain)), rng_(spec_.seed) {
  spec_.check();
}

SiteSymbol Colouring::at(const Site& x) const {
  SiteSymbol s;
  switch (spec_.kind) {
    case EnsembleKind::site_percolation:
      // cond 1 = Kirchhoff with probability p, 0 = Dirichlet.
      s.cond = rng_.uniform(x, kFieldCondition) < spec_.p ? 1u : 0u;
      break;
    case EnsembleKind::edge_percolation:
      // bit j-1 set = edge [x, x+e_j] cut off by Dirichlet on both ends,
      // each independently with probability 1 - p0.
      for (int j = 1; j <= spec_.d; ++j)
        if (rng_.uniform(x, kFieldCondition, static_cast<uint32_t>(j)) < 1.0 - spec_.p)
          s.cond |= 1u << (j - 1);
      break;
    case EnsembleKind::junction_percolation:
      // bits 0..d-1: ends (x, +j); bits d..2d-1: ends (x, -j); each flag set
      // with probability 1 - p.
      for (int j = 1; j <= spec_.d; ++j) {
        if (rng_.uniform(x, kFieldCondition, static_cast<uint32_t>(j)) < 1.0 - spec_.p) s.cond |= 1u << (j - 1);
        if (rng_.uniform(x, kFieldCondition, static_cast<uint32_t>(spec_.d + j)) < 1.0 - spec_.p)
          s.cond |= 1u << (spec_.d + j - 1);
      }
      break;
    case EnsembleKind::iid:
      s.cond = pick_weighted(spec_.condition_weights, rng_.uniform(x, kFieldCondition));
      for (int j = 1; j <= spec_.d; ++j)
        s.potential[static_cast<size_t>(j - 1)] =
            pick_weighted(spec_.potential_weights, rng_.uniform(x, kFieldPotentialBase + static_cast<uint32_t>(j - 1)));
      break;
  }
  return s;
}

Colouring sample(const EnsembleSpec& spec, const Region& region, int margin) {
  if (margin < 0) throw std::invalid_argument("sample: margin must be >= 0");
  std::set<Site> dom;
  for (const Site& x : region.sites) {
    if (margin == 0) {
      dom.insert(x);
      continue;
    }
    // Chebyshev dilation: the cube x + [-margin, margin]^d
    Site off = Site::zero(region.d);
    for (int j = 0; j < region.d; ++j) off[j] = -margin;
    while (true) {
      dom.insert(x + off);
      int j = 0;
      for (; j < region.d; ++j) {
        if (off[j] < margin) {
          ++off[j];
          break;
        }
        off[j] = -margin;
      }
      if (j == region.d) break;
    }
  }
  Region domain{region.d, std::vector<Site>(dom.begin(), dom.end())};
  return Colouring(spec, std::move(domain));
}

namespace {

bool end_flag_from_symbols(const Colouring& col, const MetricSubgraph& g, const Site& v, const EndRef& end) {
  const EnsembleSpec& spec = col.spec();
  const EdgeId& e = g.edges[static_cast<size_t>(end.edge)];
  if (spec.kind == EnsembleKind::edge_percolation) {
    // the whole edge is cut iff the anchor's j-flag is set
    return (col.at(e.anchor).cond >> (e.dir - 1)) & 1u;
  }
  if (spec.kind == EnsembleKind::junction_percolation) {
    // flag word sits at the junction vertex itself
    uint32_t word = col.at(v).cond;
    int bit = end.at_start ? (e.dir - 1) : (spec.d + e.dir - 1);
    return (word >> bit) & 1u;
  }
  return false;
}

}  // namespace

OperatorData realize(const Colouring& colouring, const Region& q) {
  const EnsembleSpec& spec = colouring.spec();
  const bool needs_neighbors =
      spec.kind == EnsembleKind::edge_percolation || spec.kind == EnsembleKind::junction_percolation;

  OperatorData data;
  data.graph = induced_subgraph(q);
  const MetricSubgraph& g = data.graph;

  for (const Site& x : q.sites)
    if (!colouring.defined_at(x)) throw std::invalid_argument("realize: colouring does not cover the region");
  if (needs_neighbors) {
    // edge/junction ensembles read symbols at every vertex of G_Q
    for (const Site& v : g.vertices)
      if (!colouring.defined_at(v)) throw std::invalid_argument("realize: missing symbols; sample with margin >= 1");
  }

  // potentials from the anchor site symbols
  data.potentials.resize(g.edges.size());
  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    if (spec.kind == EnsembleKind::iid) {
      const SiteSymbol s = colouring.at(g.edges[ei].anchor);
      data.potentials[ei] = spec.potential_alphabet[s.potential[static_cast<size_t>(g.edges[ei].dir - 1)]];
    } else {
      data.potentials[ei] = StepPotential::zero();
    }
  }

  data.conditions.resize(g.vertices.size());
  data.closure_vertex.assign(g.vertices.size(), 0);
  data.end_pinned_by_config.resize(g.vertices.size());

  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    const Site& v = g.vertices[vi];
    const auto& inc = g.incidence[vi];
    const int deg = static_cast<int>(inc.size());

    if (g.vertex_inner[vi]) {
      switch (spec.kind) {
        case EnsembleKind::site_percolation:
          data.conditions[vi] = colouring.at(v).cond ? make_kirchhoff(deg) : make_dirichlet(deg);
          break;
        case EnsembleKind::iid:
          data.conditions[vi] = spec.condition_alphabet[colouring.at(v).cond].instantiate(deg);
          break;
        case EnsembleKind::edge_percolation:
        case EnsembleKind::junction_percolation: {
          std::vector<bool> flags(static_cast<size_t>(deg));
          for (int i = 0; i < deg; ++i) {
            const EdgeId& e = g.edges[static_cast<size_t>(inc[static_cast<size_t>(i)].edge)];
            if (!inc[static_cast<size_t>(i)].at_start && !colouring.defined_at(e.anchor))
              throw std::invalid_argument("realize: edge/junction ensembles need margin >= 1");
            flags[static_cast<size_t>(i)] = end_flag_from_symbols(colouring, g, v, inc[static_cast<size_t>(i)]);
          }
          data.conditions[vi] = assemble_from_end_flags(flags);
          break;
        }
      }
      continue;
    }

    // boundary vertex: Dirichlet closure at the subgraph degree
    data.conditions[vi] = make_dirichlet(deg);
    data.closure_vertex[vi] = 1;

    // record which of these ends the configuration pins on its own; used to
    // tell genuine compact eigenfunctions from restriction artifacts
    std::vector<char>& pinned = data.end_pinned_by_config[vi];
    pinned.assign(static_cast<size_t>(deg), 0);
    for (int i = 0; i < deg; ++i) {
      switch (spec.kind) {
        case EnsembleKind::site_percolation:
          if (colouring.defined_at(v)) pinned[static_cast<size_t>(i)] = colouring.at(v).cond == 0 ? 1 : 0;
          break;
        case EnsembleKind::iid:
          if (colouring.defined_at(v))
            pinned[static_cast<size_t>(i)] = spec.condition_alphabet[colouring.at(v).cond].pins_ends() ? 1 : 0;
          break;
        case EnsembleKind::edge_percolation:
        case EnsembleKind::junction_percolation: {
          const EdgeId& e = g.edges[static_cast<size_t>(inc[static_cast<size_t>(i)].edge)];
          bool have = spec.kind == EnsembleKind::edge_percolation ? colouring.defined_at(e.anchor)
                                                                  : colouring.defined_at(v);
          if (have)
            pinned[static_cast<size_t>(i)] =
                end_flag_from_symbols(colouring, g, v, inc[static_cast<size_t>(i)]) ? 1 : 0;
          break;
        }
      }
    }
  }

  data.check();
  return data;
}

}  // namespace qgids
