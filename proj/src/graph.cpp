#include "predsearch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>

namespace predsearch {

Graph::Graph(Vertex n, std::span<const EdgeSpec> edges, Vertex root, LengthPolicy policy,
             ChildOrder order)
    : adjacency_(n < 0 ? 0 : static_cast<std::size_t>(n)),
      edges_(edges.begin(), edges.end()),
      root_(root),
      policy_(policy),
      order_(order) {
  if (n < 1) throw GraphError("graph needs at least one vertex");
  if (root < 0 || root >= n) throw GraphError("root out of range");
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw GraphError("edge endpoint out of range");
    if (e.u == e.v) throw GraphError("self loop at vertex " + std::to_string(e.u));
    const Length min_length = policy == LengthPolicy::kPositive ? 1 : 0;
    if (e.length < min_length)
      throw GraphError("edge length " + std::to_string(e.length) + " below minimum");
    if (e.length != 1) unit_lengths_ = false;
    adjacency_[e.u].push_back({e.v, e.length});
    adjacency_[e.v].push_back({e.u, e.length});
  }
  for (auto& adj : adjacency_) {
    if (order == ChildOrder::kAscendingId)
      std::stable_sort(adj.begin(), adj.end(),
                       [](const Arc& a, const Arc& b) { return a.to < b.to; });
    std::vector<Vertex> ids;
    ids.reserve(adj.size());
    for (const Arc& a : adj) ids.push_back(a.to);
    std::sort(ids.begin(), ids.end());
    if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end())
      throw GraphError("parallel edge to vertex " + std::to_string(*dup));
    max_degree_ = std::max(max_degree_, static_cast<int>(adj.size()));
  }
  // Connectivity.
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<Vertex> stack{root};
  seen[root] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Arc& a : adjacency_[v]) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++reached;
        stack.push_back(a.to);
      }
    }
  }
  if (reached != adjacency_.size()) throw GraphError("graph is not connected");
}

std::size_t Graph::check(Vertex v) const {
  if (!contains(v)) throw GraphError("vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

std::vector<Length> all_distances(const Graph& graph, Vertex source) {
  std::vector<Length> dist(static_cast<std::size_t>(graph.size()), kInfiniteLength);
  if (!graph.contains(source)) throw GraphError("source out of range");
  dist[source] = 0;
  if (graph.unit_lengths()) {
    std::deque<Vertex> queue{source};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (const Arc& a : graph.neighbors(v)) {
        if (dist[a.to] == kInfiniteLength) {
          dist[a.to] = dist[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<Length, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    for (const Arc& a : graph.neighbors(v)) {
      if (d + a.length < dist[a.to]) {
        dist[a.to] = d + a.length;
        heap.push({dist[a.to], a.to});
      }
    }
  }
  return dist;
}

TreeView::TreeView(const Graph& tree, Vertex root) : root_(root) {
  if (!tree.is_tree()) throw GraphError("TreeView requires a tree");
  build(tree, {});
}

TreeView::TreeView(const Graph& tree, Vertex root, std::span<const Vertex> members)
    : root_(root) {
  if (!tree.is_tree()) throw GraphError("TreeView requires a tree");
  build(tree, members);
}

void TreeView::build(const Graph& tree, std::span<const Vertex> members) {
  const auto n = static_cast<std::size_t>(tree.size());
  parent_.assign(n, kNoVertex);
  level_.assign(n, -1);
  depth_.assign(n, 0);
  children_.assign(n, {});
  tin_.assign(n, -1);
  tout_.assign(n, -1);
  if (members.empty()) {
    member_.assign(n, 1);
  } else {
    member_.assign(n, 0);
    for (Vertex v : members) member_.at(static_cast<std::size_t>(v)) = 1;
  }
  if (!tree.contains(root_) || !member_[root_]) throw GraphError("TreeView root not a member");

  order_.clear();
  order_.push_back(root_);
  level_[root_] = 0;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    Vertex v = order_[head];
    for (const Arc& a : tree.neighbors(v)) {
      if (a.to == parent_[v] || !member_[a.to]) continue;
      parent_[a.to] = v;
      level_[a.to] = level_[v] + 1;
      depth_[a.to] = depth_[v] + a.length;
      children_[v].push_back(a.to);
      order_.push_back(a.to);
    }
  }
  std::size_t member_count = 0;
  for (char m : member_) member_count += m ? 1 : 0;
  if (member_count != order_.size()) throw GraphError("TreeView members are not connected");

  // Euler intervals for O(1) ancestor tests.
  std::int64_t clock = 0;
  std::vector<std::pair<Vertex, std::size_t>> stack{{root_, 0}};
  tin_[root_] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      Vertex c = children_[v][next++];
      tin_[c] = clock++;
      stack.push_back({c, 0});
    } else {
      tout_[v] = clock++;
      stack.pop_back();
    }
  }
}

bool TreeView::is_ancestor(Vertex ancestor, Vertex v) const {
  if (!contains(ancestor) || !contains(v)) return false;
  return tin_[ancestor] <= tin_[v] && tout_[v] <= tout_[ancestor];
}

Vertex TreeView::ancestor_at_level(Vertex v, std::int64_t level) const {
  if (!contains(v) || level < 0 || level > level_[v]) return kNoVertex;
  while (level_[v] > level) v = parent_[v];
  return v;
}

Vertex TreeView::lca(Vertex a, Vertex b) const {
  while (level_[a] > level_[b]) a = parent_[a];
  while (level_[b] > level_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

Length TreeView::distance(Vertex a, Vertex b) const {
  return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)];
}

std::vector<Vertex> TreeView::path(Vertex a, Vertex b) const {
  const Vertex c = lca(a, b);
  std::vector<Vertex> up;
  for (Vertex v = a; v != c; v = parent_[v]) up.push_back(v);
  up.push_back(c);
  std::vector<Vertex> down;
  for (Vertex v = b; v != c; v = parent_[v]) down.push_back(v);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<std::int64_t> TreeView::subtree_sizes() const {
  std::vector<std::int64_t> size(parent_.size(), 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    size[*it] += 1;
    if (parent_[*it] != kNoVertex) size[parent_[*it]] += size[*it];
  }
  return size;
}

void Instance::validate() const {
  if (predictions.size() != static_cast<std::size_t>(graph.size()))
    throw GraphError("prediction table must cover every vertex");
  if (goal != kHiddenGoal && !graph.contains(goal)) throw GraphError("goal out of range");
}

std::vector<Vertex> erroneous_set(const Instance& inst) {
  if (!inst.has_goal()) throw GraphError("erroneous set needs a goal");
  const auto dist = all_distances(inst.graph, inst.goal);
  return erroneous_set(inst, dist);
}

std::vector<Vertex> erroneous_set(const Instance& inst, std::span<const Length> goal_distances) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < inst.graph.size(); ++v)
    if (inst.predictions[v] != goal_distances[v]) out.push_back(v);
  return out;
}

Prediction round_prediction(double raw) { return static_cast<Prediction>(std::floor(raw + 0.5)); }

std::vector<Prediction> round_predictions(std::span<const double> raw) {
  std::vector<Prediction> out;
  out.reserve(raw.size());
  for (double x : raw) out.push_back(round_prediction(x));
  return out;
}

std::vector<Prediction> perfect_predictions(const Graph& graph, Vertex goal) {
  auto dist = all_distances(graph, goal);
  return {dist.begin(), dist.end()};
}

}  // namespace predsearch
