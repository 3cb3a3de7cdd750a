#include "qgids/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qgids {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<Component> cluster_decompose_full(const OperatorData& data) {
  data.check();
  const MetricSubgraph& g = data.graph;
  const int m = static_cast<int>(g.edges.size());

  // Union edges through the coupled end blocks at each vertex. Twisting is
  // diagonal and cannot change the block structure.
  UnionFind uf(static_cast<size_t>(m));
  std::vector<std::vector<std::vector<int>>> blocks(g.vertices.size());
  for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
    blocks[vi] = end_blocks(data.conditions[vi]);
    const auto& inc = g.incidence[vi];
    for (const auto& block : blocks[vi])
      for (size_t k = 1; k < block.size(); ++k)
        uf.merge(inc[static_cast<size_t>(block[0])].edge, inc[static_cast<size_t>(block[k])].edge);
  }

  std::map<int, std::vector<int>> groups;  // root -> parent edge indices
  for (int e = 0; e < m; ++e) groups[uf.find(e)].push_back(e);

  std::vector<Component> out;
  out.reserve(groups.size());
  for (auto& [root, edge_list] : groups) {
    Component comp;
    comp.parent_edges = edge_list;

    std::vector<EdgeId> edges;
    for (int e : edge_list) edges.push_back(g.edges[static_cast<size_t>(e)]);
    MetricSubgraph sub = subgraph_from_edges(g.d, edges);

    std::vector<StepPotential> pots(sub.edges.size());
    std::vector<double> twists(sub.edges.size(), 0.0);
    bool any_twist = false;
    for (size_t se = 0; se < sub.edges.size(); ++se) {
      int pe = g.edge_index(sub.edges[se]);
      pots[se] = data.potentials[static_cast<size_t>(pe)];
      if (!data.twist_phases.empty()) {
        twists[se] = data.twist_phases[static_cast<size_t>(pe)];
        any_twist = any_twist || twists[se] != 0.0;
      }
    }

    std::vector<VertexCondition> conds(sub.vertices.size());
    std::vector<char> closure(sub.vertices.size(), 0);
    std::vector<std::vector<char>> pinned(sub.vertices.size());
    for (size_t svi = 0; svi < sub.vertices.size(); ++svi) {
      const Site& v = sub.vertices[svi];
      int pvi = g.vertex_index(v);
      const auto& pinc = g.incidence[static_cast<size_t>(pvi)];
      // parent end indices belonging to this component, in canonical order
      std::vector<int> ends;
      for (size_t i = 0; i < pinc.size(); ++i)
        if (uf.find(pinc[i].edge) == root) ends.push_back(static_cast<int>(i));
      conds[svi] = restrict_to_ends(data.conditions[static_cast<size_t>(pvi)], ends);
      if (!data.closure_vertex.empty() && data.closure_vertex[static_cast<size_t>(pvi)]) {
        closure[svi] = 1;
        pinned[svi].resize(ends.size(), 0);
        const auto& ppin = data.end_pinned_by_config[static_cast<size_t>(pvi)];
        for (size_t k = 0; k < ends.size(); ++k) {
          char is_pinned = ppin.empty() ? 0 : ppin[static_cast<size_t>(ends[k])];
          pinned[svi][k] = is_pinned;
          if (!is_pinned) comp.config_decoupled = false;
        }
      }
    }

    comp.data = make_operator_data(std::move(sub), std::move(conds), std::move(pots),
                                   any_twist ? std::move(twists) : std::vector<double>{});
    comp.data.closure_vertex = std::move(closure);
    comp.data.end_pinned_by_config = std::move(pinned);
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<OperatorData> cluster_decompose(const OperatorData& data) {
  std::vector<OperatorData> out;
  for (Component& c : cluster_decompose_full(data)) out.push_back(std::move(c.data));
  return out;
}

}  // namespace qgids
