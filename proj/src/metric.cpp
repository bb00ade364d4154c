#include "predsearch/metric.hpp"

#include <algorithm>

namespace predsearch {

DistanceMatrix all_pairs_distances(const Graph& graph) {
  const Vertex n = graph.size();
  DistanceMatrix out(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Vertex s = 0; s < n; ++s) {
    const auto dist = all_distances(graph, s);
    std::copy(dist.begin(), dist.end(), out.mutable_row(s).begin());
  }
  return out;
}

DistanceMatrix all_pairs_distances_serial(const Graph& graph) {
  const Vertex n = graph.size();
  DistanceMatrix out(n);
  for (Vertex s = 0; s < n; ++s) {
    const auto dist = all_distances(graph, s);
    std::copy(dist.begin(), dist.end(), out.mutable_row(s).begin());
  }
  return out;
}

DistanceOracle::DistanceOracle(const Graph& graph) : graph_(&graph) {
  if (!graph.is_tree()) {
    cache_.resize(static_cast<std::size_t>(graph.size()));
    return;
  }
  const auto n = static_cast<std::size_t>(graph.size());
  parent_.assign(n, kNoVertex);
  level_.assign(n, 0);
  depth_.assign(n, 0);
  std::vector<Vertex> order{graph.root()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex v = order[head];
    for (const Arc& a : graph.neighbors(v)) {
      if (a.to == parent_[v]) continue;
      parent_[a.to] = v;
      level_[a.to] = level_[v] + 1;
      depth_[a.to] = depth_[v] + a.length;
      order.push_back(a.to);
    }
  }
}

Length DistanceOracle::operator()(Vertex u, Vertex v) {
  if (!graph_->contains(u) || !graph_->contains(v)) throw GraphError("distance query out of range");
  if (u == v) return 0;
  if (!parent_.empty()) {
    Vertex a = u;
    Vertex b = v;
    while (level_[a] > level_[b]) a = parent_[a];
    while (level_[b] > level_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return depth_[u] + depth_[v] - 2 * depth_[a];
  }
  auto& row = cache_[u];
  if (row.empty()) row = all_distances(*graph_, u);
  return row[v];
}

}  // namespace predsearch
