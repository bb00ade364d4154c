#pragma once

#include <algorithm>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/rng.hpp"

namespace predsearch::testing {

inline Instance make_instance(Vertex n, std::vector<EdgeSpec> edges, Vertex goal, Vertex root = 0,
                              LengthPolicy policy = LengthPolicy::kPositive) {
  Instance inst;
  inst.graph = Graph(n, edges, root, policy);
  inst.goal = goal;
  inst.predictions = goal == kHiddenGoal ? std::vector<Prediction>(static_cast<std::size_t>(n), 0)
                                         : perfect_predictions(inst.graph, goal);
  return inst;
}

inline bool same_edges(const Graph& a, const Graph& b) {
  return std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                    [](const EdgeSpec& x, const EdgeSpec& y) { return x.u == y.u && x.v == y.v && x.length == y.length; });
}

// 0 - 1 - ... - (n-1)
inline Instance path_instance(Vertex n, Vertex goal, Vertex root = 0) {
  std::vector<EdgeSpec> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v, 1});
  return make_instance(n, edges, goal, root);
}

// Heap-numbered complete binary tree with `n` vertices.
inline Instance binary_instance(Vertex n, Vertex goal) {
  std::vector<EdgeSpec> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v, 1});
  return make_instance(n, edges, goal);
}

// Floyd-Warshall over the edge list; independent of the library's searches.
inline std::vector<std::vector<Length>> floyd(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::vector<Length>> d(n, std::vector<Length>(n, kInfiniteLength));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const EdgeSpec& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Random connected graph: a random tree plus `extra` chords, lengths in [1, max_len].
inline Graph random_graph(Vertex n, int extra, Length max_len, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<EdgeSpec> edges;
  for (Vertex v = 1; v < n; ++v)
    edges.push_back({static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v))), v, rng.between(1, max_len)});
  for (int i = 0; i < extra && n > 2; ++i) {
    const auto u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    bool dup = false;
    for (const auto& e : edges) dup = dup || (e.u == u && e.v == v) || (e.u == v && e.v == u);
    if (!dup) edges.push_back({u, v, rng.between(1, max_len)});
  }
  return Graph(n, edges, 0);
}

}  // namespace predsearch::testing
