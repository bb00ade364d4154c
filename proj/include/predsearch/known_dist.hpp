#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "predsearch/env.hpp"

namespace predsearch {

inline constexpr std::int64_t kUnboundedBudget = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kDefaultC1 = 86;

class NotATree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Level of the anchor of a vertex at `level` with prediction `prediction`
// under distance parameter `distance`; nullopt when the vertex has no anchor.
std::optional<std::int64_t> anchor_level(std::int64_t level, Prediction prediction,
                                         std::int64_t distance);

// Both conditions of criticality of a vertex w.r.t. child j, given the load
// of j, the minimum load over the other active children, and |C_j|.
bool critical_condition(std::int64_t load_j, std::int64_t min_other_load, std::int64_t visited_j);

enum class RunOutcome {
  kGoalFound,
  kBudgetExhausted,
  kTreeExhausted,  // every vertex reachable from the local root visited, no goal
};

const char* to_string(RunOutcome outcome);

struct StepRecord {
  std::int64_t t = 0;
  Vertex position = kNoVertex;
  Vertex anchor = kNoVertex;
  bool callback = false;     // criticality of the anchor fired
  int chosen_child = -1;     // q when the callback fired, else -1
  Vertex next = kNoVertex;
};

void write_step_record(std::ostream& out, const StepRecord& step);

class KnownDistExplorer;
using StepObserver = std::function<void(const KnownDistExplorer&, const StepRecord&)>;

// Budgeted exploration of a tree given a claimed goal distance. The run is
// rooted at the agent's current position; its visited set, loads, anchors
// and memory pointers are local to the run even if the view has seen more.
class KnownDistExplorer {
 public:
  KnownDistExplorer(ExplorationView& view, std::int64_t distance,
                    std::int64_t budget = kUnboundedBudget);

  RunOutcome run(const StepObserver& observer = {});
  // One iteration of the main loop. Returns false if the loop guard fails.
  bool step(const StepObserver& observer = {});
  std::optional<RunOutcome> finished() const;

  Vertex root() const { return root_; }
  std::int64_t distance() const { return distance_; }
  std::int64_t budget() const { return budget_; }
  std::int64_t steps() const { return t_; }
  Vertex position() const { return position_; }
  std::size_t visited_count() const { return order_.size(); }
  const std::vector<Vertex>& visit_order() const { return order_; }

  // Local rooted structure (valid for locally observed vertices).
  bool is_visited(Vertex v) const { return visited_[v] != 0; }
  bool is_observed(Vertex v) const { return v == root_ || (parent_[v] != kNoVertex); }
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::int64_t level(Vertex v) const { return level_[v]; }
  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  int child_index(Vertex v) const { return child_index_[v]; }

  Vertex anchor(Vertex v) const { return anchor_[v]; }
  std::int64_t load(Vertex v, int child) const { return load_[v][child]; }
  std::int64_t total_load(Vertex v) const;
  // |C_i(v)|: visited vertices in the i-th child subtree.
  std::int64_t child_visited(Vertex v, int child) const { return subtree_visited_[children_[v][child]]; }
  std::int64_t subtree_visited(Vertex v) const { return subtree_visited_[v]; }
  Vertex memory(Vertex v) const { return visited_[v] ? memory_[v] : kNoVertex; }

  bool is_active(Vertex v) const { return subtree_frontier_[v] > 0; }
  bool is_degenerate(Vertex v) const { return is_active(v) && active_children_[v] == 1; }
  bool is_critical(Vertex v, int j) const;

 private:
  void visit(Vertex v);
  int argmin_active_load(Vertex v, int excluded) const;
  bool has_unvisited_child(Vertex v) const;
  Vertex smallest_prediction_child(Vertex v) const;

  ExplorationView* view_;
  Vertex root_;
  std::int64_t distance_;
  std::int64_t budget_;
  std::int64_t t_ = 0;
  Vertex position_;
  bool goal_found_ = false;
  bool exhausted_ = false;

  std::vector<char> visited_;
  std::vector<Vertex> order_;
  std::vector<Vertex> parent_;
  std::vector<std::int64_t> level_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<int> child_index_;
  std::vector<Vertex> anchor_;
  std::vector<int> anchor_child_;  // index at the anchor of the child subtree holding v
  std::vector<std::vector<std::int64_t>> load_;
  std::vector<std::int64_t> subtree_visited_;
  std::vector<std::int64_t> subtree_frontier_;
  std::vector<int> active_children_;
  std::vector<Vertex> memory_;
};

}  // namespace predsearch
