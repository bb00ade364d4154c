#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace predsearch {

using Vertex = std::int32_t;
using Length = std::int64_t;
using Prediction = std::int64_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr Length kInfiniteLength = std::numeric_limits<Length>::max() / 4;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  Vertex to;
  Length length;
};

struct EdgeSpec {
  Vertex u;
  Vertex v;
  Length length = 1;
};

enum class LengthPolicy {
  kPositive,     // every edge length >= 1
  kNonNegative,  // zero-length edges allowed (hardness demonstration only)
};

enum class ChildOrder {
  kAscendingId,  // adjacency sorted by neighbour id
  kAsGiven,      // adjacency keeps edge-list insertion order
};

// Undirected connected graph with integer edge lengths and a root.
// Adjacency order is fixed at construction and defines the child order
// of every rooted view.
class Graph {
 public:
  Graph() = default;
  Graph(Vertex n, std::span<const EdgeSpec> edges, Vertex root,
        LengthPolicy policy = LengthPolicy::kPositive,
        ChildOrder order = ChildOrder::kAscendingId);

  Vertex size() const { return static_cast<Vertex>(adjacency_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  Vertex root() const { return root_; }
  int max_degree() const { return max_degree_; }
  bool is_tree() const { return edges_.size() + 1 == adjacency_.size(); }
  bool unit_lengths() const { return unit_lengths_; }
  LengthPolicy length_policy() const { return policy_; }
  ChildOrder child_order() const { return order_; }

  std::span<const Arc> neighbors(Vertex v) const { return adjacency_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[check(v)].size()); }
  const std::vector<EdgeSpec>& edges() const { return edges_; }

  bool contains(Vertex v) const { return v >= 0 && v < size(); }

 private:
  std::size_t check(Vertex v) const;

  std::vector<std::vector<Arc>> adjacency_;
  std::vector<EdgeSpec> edges_;
  Vertex root_ = 0;
  int max_degree_ = 0;
  bool unit_lengths_ = true;
  LengthPolicy policy_ = LengthPolicy::kPositive;
  ChildOrder order_ = ChildOrder::kAscendingId;
};

// Single-source shortest paths: BFS for unit lengths, Dijkstra otherwise.
std::vector<Length> all_distances(const Graph& graph, Vertex source);

// Rooted orientation of a tree (or of a vertex subset inducing a subtree).
class TreeView {
 public:
  TreeView(const Graph& tree, Vertex root);
  // Restricts the orientation to `members`, which must induce a connected
  // subtree containing `root`.
  TreeView(const Graph& tree, Vertex root, std::span<const Vertex> members);

  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  // Number of edges between v and the root.
  std::int64_t level(Vertex v) const { return level_[v]; }
  // Length-weighted distance to the root.
  Length depth(Vertex v) const { return depth_[v]; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  bool contains(Vertex v) const { return v >= 0 && v < id_bound() && member_[v]; }
  std::size_t size() const { return order_.size(); }
  Vertex id_bound() const { return static_cast<Vertex>(parent_.size()); }
  // Vertices in BFS order from the root.
  const std::vector<Vertex>& order() const { return order_; }

  bool is_ancestor(Vertex ancestor, Vertex v) const;
  Vertex ancestor_at_level(Vertex v, std::int64_t level) const;
  Vertex lca(Vertex a, Vertex b) const;
  Length distance(Vertex a, Vertex b) const;
  std::vector<Vertex> path(Vertex a, Vertex b) const;
  // Sizes of the subtree hanging at each member (0 for non-members).
  std::vector<std::int64_t> subtree_sizes() const;

 private:
  void build(const Graph& tree, std::span<const Vertex> members);

  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<std::int64_t> level_;
  std::vector<Length> depth_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<char> member_;
  std::vector<Vertex> order_;
  std::vector<std::int64_t> tin_;
  std::vector<std::int64_t> tout_;
};

inline constexpr Vertex kHiddenGoal = kNoVertex;

struct Instance {
  Graph graph;
  Vertex goal = kHiddenGoal;
  std::vector<Prediction> predictions;

  bool has_goal() const { return goal != kHiddenGoal; }
  // Throws GraphError if predictions are not total or the goal is out of range.
  void validate() const;
};

// {v : f(v) != d(v, g)}, ascending.
std::vector<Vertex> erroneous_set(const Instance& inst);
std::vector<Vertex> erroneous_set(const Instance& inst, std::span<const Length> goal_distances);

// Nearest integer, exact halves rounded up.
Prediction round_prediction(double raw);
std::vector<Prediction> round_predictions(std::span<const double> raw);

// f(v) = d(v, g) for every vertex.
std::vector<Prediction> perfect_predictions(const Graph& graph, Vertex goal);

}  // namespace predsearch
