#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "predsearch/graph.hpp"
#include "predsearch/metric.hpp"

namespace predsearch {

// An algorithm asked for something outside its information model.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class TargetNotObserved : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

struct MoveRecord {
  std::int64_t t = 0;  // 1-based move index
  Vertex from = kNoVertex;
  Vertex to = kNoVertex;
  Length step_cost = 0;
  Length cumulative_cost = 0;
  std::int64_t visited = 0;  // |V_t| after the move
  bool goal_found = false;
};

// Movement cost bookkeeping. Frozen once the goal is reached.
class CostLedger {
 public:
  void charge(Vertex from, Vertex to, Length distance, std::int64_t visited, bool reached_goal);
  // The run started on the goal: found at t = 0 with no moves.
  void mark_goal_at_start();

  Length total() const { return total_; }
  bool goal_found() const { return goal_time_ >= 0; }
  // Move index at which the goal was reached, or -1.
  std::int64_t goal_time() const { return goal_time_; }
  const std::vector<MoveRecord>& moves() const { return moves_; }

 private:
  Length total_ = 0;
  std::int64_t goal_time_ = -1;
  std::vector<MoveRecord> moves_;
};

// Columns: t,from,to,step_cost,cumulative_cost,visited,goal_found
void write_trace_csv(std::ostream& out, std::span<const MoveRecord> moves);
std::vector<MoveRecord> read_trace_csv(std::istream& in);

class Environment;

// The agent's side of an exploration run: visited set, frontier, the
// predictions and adjacency it has legally observed, and its position.
// Anything else is a ContractViolation.
class ExplorationView {
 public:
  Vertex root() const { return root_; }
  Vertex position() const { return position_; }
  // Vertex ids are dense in [0, id_bound()); sizing arrays by it reveals nothing else.
  Vertex id_bound() const { return static_cast<Vertex>(visited_.size()); }
  // Degree bound, part of the problem statement.
  int max_degree() const { return max_degree_; }

  bool is_visited(Vertex v) const { return in_range(v) && visited_[v]; }
  bool is_observed(Vertex v) const { return in_range(v) && observed_[v]; }
  bool is_frontier(Vertex v) const { return is_observed(v) && !visited_[v]; }
  std::size_t visited_count() const { return visit_order_.size(); }
  std::size_t frontier_count() const { return frontier_count_; }
  // First-visit order, starting with the root.
  const std::vector<Vertex>& visit_order() const { return visit_order_; }

  // Incident edges of a visited vertex.
  std::span<const Arc> neighbors(Vertex v) const;
  // Prediction of an observed vertex.
  Prediction prediction(Vertex v) const;

  // Moves to an observed vertex, charging the shortest-path distance.
  // Returns true iff the target is the goal.
  bool move_to(Vertex target);
  bool goal_found() const { return ledger_.goal_found(); }
  const CostLedger& ledger() const { return ledger_; }

 private:
  friend class Environment;
  ExplorationView(std::shared_ptr<const Instance> inst);
  bool in_range(Vertex v) const { return v >= 0 && v < id_bound(); }
  void visit(Vertex v);

  std::shared_ptr<const Instance> instance_;
  DistanceOracle distance_;
  Vertex root_;
  Vertex position_;
  int max_degree_;
  std::vector<char> visited_;
  std::vector<char> observed_;
  std::vector<Vertex> visit_order_;
  std::size_t frontier_count_ = 0;
  CostLedger ledger_;
};

// Owns the full instance; hands algorithms only the view.
class Environment {
 public:
  explicit Environment(Instance inst);
  explicit Environment(std::shared_ptr<const Instance> inst);

  ExplorationView& view() { return view_; }
  const ExplorationView& view() const { return view_; }
  const Instance& instance() const { return *instance_; }

 private:
  std::shared_ptr<const Instance> instance_;
  ExplorationView view_;
};

// Visited vertices off the root-goal path (tree instances, diagnostic only).
std::int64_t extra_exploration(const ExplorationView& view, const Instance& inst);
std::int64_t extra_exploration(std::span<const Vertex> visited, const Instance& inst);

}  // namespace predsearch
