#include "qgids/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qgids {

bool Region::contains(const Site& x) const {
  return std::binary_search(sites.begin(), sites.end(), x);
}

Region make_region(int d, std::vector<Site> sites) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("region: dimension out of range");
  if (sites.empty()) throw std::invalid_argument("region: empty site set");
  for (const Site& s : sites)
    if (s.dim() != d) throw std::invalid_argument("region: site dimension mismatch");
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return Region{d, std::move(sites)};
}

Region cube_region(int d, int M) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("cube_region: dimension out of range");
  if (M < 1) throw std::invalid_argument("cube_region: M must be >= 1");
  std::vector<Site> sites;
  sites.reserve(static_cast<size_t>(std::pow(double(M), d)) + 1);
  Site x = Site::zero(d);
  while (true) {
    sites.push_back(x);
    int j = 0;
    for (; j < d; ++j) {
      if (x[j] + 1 < M) {
        ++x[j];
        break;
      }
      x[j] = 0;
    }
    if (j == d) break;
  }
  std::sort(sites.begin(), sites.end());
  return Region{d, std::move(sites)};
}

Region translate(const Region& q, const Site& t) {
  std::vector<Site> sites = q.sites;
  for (Site& s : sites) s = s + t;
  std::sort(sites.begin(), sites.end());
  return Region{q.d, std::move(sites)};
}

int MetricSubgraph::vertex_index(const Site& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || !(*it == v)) return -1;
  return static_cast<int>(it - vertices.begin());
}

int MetricSubgraph::edge_index(const EdgeId& e) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || !(*it == e)) return -1;
  return static_cast<int>(it - edges.begin());
}

std::size_t MetricSubgraph::num_boundary_vertices() const {
  std::size_t n = 0;
  for (char f : vertex_inner)
    if (!f) ++n;
  return n;
}

namespace {

// Common finishing step: given d and sorted unique edges, derive vertices,
// classification against G_d, and canonical incidence.
MetricSubgraph finish(int d, std::vector<EdgeId> edges, Region region) {
  MetricSubgraph g;
  g.d = d;
  g.region = std::move(region);
  g.edges = std::move(edges);

  std::set<Site> vset;
  for (const EdgeId& e : g.edges) {
    vset.insert(e.start());
    vset.insert(e.target());
  }
  g.vertices.assign(vset.begin(), vset.end());

  auto has_edge = [&](const EdgeId& e) { return g.edge_index(e) >= 0; };

  g.vertex_inner.resize(g.vertices.size());
  g.incidence.resize(g.vertices.size());
  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    const Site& v = g.vertices[vi];
    bool inner = true;
    auto& inc = g.incidence[vi];
    for (int j = 1; j <= d; ++j) {
      EdgeId out{v, j};
      if (has_edge(out))
        inc.push_back(EndRef{g.edge_index(out), true});
      else
        inner = false;
    }
    for (int j = 1; j <= d; ++j) {
      EdgeId in{v.shifted(j, -1), j};
      if (has_edge(in))
        inc.push_back(EndRef{g.edge_index(in), false});
      else
        inner = false;
    }
    g.vertex_inner[vi] = inner ? 1 : 0;
  }

  g.edge_inner.resize(g.edges.size());
  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    int a = g.vertex_index(g.edges[ei].start());
    int b = g.vertex_index(g.edges[ei].target());
    g.edge_inner[ei] = (g.vertex_inner[static_cast<size_t>(a)] && g.vertex_inner[static_cast<size_t>(b)]) ? 1 : 0;
  }
  return g;
}

}  // namespace

MetricSubgraph induced_subgraph(const Region& q) {
  if (q.sites.empty()) throw std::invalid_argument("induced_subgraph: empty region");
  std::vector<EdgeId> edges;
  edges.reserve(q.sites.size() * static_cast<size_t>(q.d));
  for (const Site& x : q.sites)
    for (int j = 1; j <= q.d; ++j) edges.push_back(EdgeId{x, j});
  std::sort(edges.begin(), edges.end());
  return finish(q.d, std::move(edges), q);
}

MetricSubgraph subgraph_from_edges(int d, std::vector<EdgeId> edges) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("subgraph_from_edges: bad dimension");
  if (edges.empty()) throw std::invalid_argument("subgraph_from_edges: empty edge set");
  for (const EdgeId& e : edges) {
    if (e.dir < 1 || e.dir > d) throw std::invalid_argument("subgraph_from_edges: bad direction");
    if (e.anchor.dim() != d) throw std::invalid_argument("subgraph_from_edges: anchor dimension mismatch");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return finish(d, std::move(edges), Region{d, {}});
}

MetricSubgraph translate(const MetricSubgraph& g, const Site& t) {
  std::vector<EdgeId> edges = g.edges;
  for (EdgeId& e : edges) e.anchor = e.anchor + t;
  if (!g.region.sites.empty()) {
    Region r = translate(g.region, t);
    std::sort(edges.begin(), edges.end());
    return finish(g.d, std::move(edges), std::move(r));
  }
  return subgraph_from_edges(g.d, std::move(edges));
}

double boundary_ratio(const Region& q) {
  MetricSubgraph g = induced_subgraph(q);
  return static_cast<double>(g.num_boundary_vertices()) / static_cast<double>(q.size());
}

std::vector<Region> van_hove_cubes(int d, const std::vector<int>& m_list) {
  if (m_list.empty()) throw std::invalid_argument("van_hove_cubes: empty M list");
  for (size_t i = 0; i + 1 < m_list.size(); ++i)
    if (m_list[i] >= m_list[i + 1]) throw std::invalid_argument("van_hove_cubes: M list must be strictly increasing");
  std::vector<Region> out;
  out.reserve(m_list.size());
  for (int m : m_list) out.push_back(cube_region(d, m));
  return out;
}

}  // namespace qgids
