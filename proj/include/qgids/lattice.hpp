#pragma once

#include <vector>

#include "qgids/site.hpp"

namespace qgids {

/// Directed lattice edge [anchor, anchor + e_dir], identified with (0,1),
/// parametrized from the anchor towards the far endpoint.
struct EdgeId {
  Site anchor;
  int dir = 1;  // 1..d

  Site start() const { return anchor; }
  Site target() const { return anchor.shifted(dir, +1); }

  friend bool operator==(const EdgeId& a, const EdgeId& b) { return a.dir == b.dir && a.anchor == b.anchor; }
  friend bool operator<(const EdgeId& a, const EdgeId& b) {
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.dir < b.dir;
  }
};

/// A finite set of lattice sites.
struct Region {
  int d = 1;
  std::vector<Site> sites;  // sorted, unique

  std::size_t size() const { return sites.size(); }
  bool contains(const Site& x) const;
};

Region make_region(int d, std::vector<Site> sites);

/// Axis cube C_M = {0 <= x_j <= M-1}.
Region cube_region(int d, int M);

/// Shifted region t + Q.
Region translate(const Region& q, const Site& t);

/// One end of an edge as seen from a vertex.
struct EndRef {
  int edge = -1;     // index into MetricSubgraph::edges
  bool at_start = true;
};

/// Finite metric subgraph of G_d with inner/boundary classification taken
/// against the full lattice. Incidence lists are ordered canonically:
/// outgoing directions +1..+d (start role) then incoming -1..-d (end role),
/// skipping absent edges. This fixes the row order of every vertex-condition
/// matrix downstream.
struct MetricSubgraph {
  int d = 1;
  Region region;  // empty for explicit edge-set subgraphs
  std::vector<EdgeId> edges;     // sorted
  std::vector<Site> vertices;    // sorted
  std::vector<char> vertex_inner;
  std::vector<char> edge_inner;
  std::vector<std::vector<EndRef>> incidence;  // per vertex

  int vertex_index(const Site& v) const;  // -1 if absent
  int edge_index(const EdgeId& e) const;  // -1 if absent
  int degree(int v) const { return static_cast<int>(incidence[static_cast<size_t>(v)].size()); }
  std::size_t num_edges() const { return edges.size(); }
  std::size_t num_boundary_vertices() const;
};

/// Subgraph induced by a region: the d edges anchored at each site, so
/// |edges| = d * |Q| exactly.
MetricSubgraph induced_subgraph(const Region& q);

/// Subgraph from an explicit edge set (paths, cycles, test graphs).
MetricSubgraph subgraph_from_edges(int d, std::vector<EdgeId> edges);

MetricSubgraph translate(const MetricSubgraph& g, const Site& t);

/// |V^boundary_Q| / |Q|.
double boundary_ratio(const Region& q);

/// Cubes C_M for a strictly increasing list of side parameters.
std::vector<Region> van_hove_cubes(int d, const std::vector<int>& m_list);

}  // namespace qgids
