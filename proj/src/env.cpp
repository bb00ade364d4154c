#include "predsearch/env.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace predsearch {

void CostLedger::charge(Vertex from, Vertex to, Length distance, std::int64_t visited,
                        bool reached_goal) {
  if (goal_found()) throw ContractViolation("ledger is frozen: goal already found");
  total_ += distance;
  MoveRecord rec;
  rec.t = static_cast<std::int64_t>(moves_.size()) + 1;
  rec.from = from;
  rec.to = to;
  rec.step_cost = distance;
  rec.cumulative_cost = total_;
  rec.visited = visited;
  rec.goal_found = reached_goal;
  moves_.push_back(rec);
  if (reached_goal) goal_time_ = rec.t;
}

void CostLedger::mark_goal_at_start() {
  if (!moves_.empty()) throw ContractViolation("goal-at-start after moves");
  goal_time_ = 0;
}

void write_trace_csv(std::ostream& out, std::span<const MoveRecord> moves) {
  out << "t,from,to,step_cost,cumulative_cost,visited,goal_found\n";
  for (const MoveRecord& m : moves) {
    out << m.t << ',' << m.from << ',' << m.to << ',' << m.step_cost << ',' << m.cumulative_cost
        << ',' << m.visited << ',' << (m.goal_found ? 1 : 0) << '\n';
  }
}

std::vector<MoveRecord> read_trace_csv(std::istream& in) {
  std::vector<MoveRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  if (line.rfind("t,from,to", 0) != 0) throw std::runtime_error("trace: unexpected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    MoveRecord m;
    char c1, c2, c3, c4, c5, c6;
    int found = 0;
    if (!(row >> m.t >> c1 >> m.from >> c2 >> m.to >> c3 >> m.step_cost >> c4 >>
          m.cumulative_cost >> c5 >> m.visited >> c6 >> found))
      throw std::runtime_error("trace: malformed line " + std::to_string(line_no));
    m.goal_found = found != 0;
    out.push_back(m);
  }
  return out;
}

ExplorationView::ExplorationView(std::shared_ptr<const Instance> inst)
    : instance_(std::move(inst)),
      distance_(instance_->graph),
      root_(instance_->graph.root()),
      position_(root_),
      max_degree_(instance_->graph.max_degree()),
      visited_(static_cast<std::size_t>(instance_->graph.size()), 0),
      observed_(static_cast<std::size_t>(instance_->graph.size()), 0) {
  observed_[root_] = 1;
  frontier_count_ = 1;
  visit(root_);
  if (root_ == instance_->goal) ledger_.mark_goal_at_start();
}

void ExplorationView::visit(Vertex v) {
  visited_[v] = 1;
  --frontier_count_;
  visit_order_.push_back(v);
  for (const Arc& a : instance_->graph.neighbors(v)) {
    if (!observed_[a.to]) {
      observed_[a.to] = 1;
      ++frontier_count_;
    }
  }
}

std::span<const Arc> ExplorationView::neighbors(Vertex v) const {
  if (!is_visited(v))
    throw ContractViolation("adjacency of unvisited vertex " + std::to_string(v) + " requested");
  return instance_->graph.neighbors(v);
}

Prediction ExplorationView::prediction(Vertex v) const {
  if (!is_observed(v))
    throw ContractViolation("prediction of unobserved vertex " + std::to_string(v) + " requested");
  return instance_->predictions[v];
}

bool ExplorationView::move_to(Vertex target) {
  if (!is_observed(target))
    throw TargetNotObserved("move to unobserved vertex " + std::to_string(target));
  if (target == position_) throw ContractViolation("no-op move to current vertex");
  if (goal_found()) throw ContractViolation("move after goal was found");
  const Length step = distance_(position_, target);
  if (!visited_[target]) visit(target);
  const bool reached = target == instance_->goal;
  ledger_.charge(position_, target, step, static_cast<std::int64_t>(visit_order_.size()), reached);
  position_ = target;
  return reached;
}

Environment::Environment(Instance inst)
    : Environment(std::make_shared<const Instance>(std::move(inst))) {}

Environment::Environment(std::shared_ptr<const Instance> inst)
    : instance_(inst), view_((inst->validate(), inst)) {}

std::int64_t extra_exploration(const ExplorationView& view, const Instance& inst) {
  return extra_exploration(view.visit_order(), inst);
}

std::int64_t extra_exploration(std::span<const Vertex> visited, const Instance& inst) {
  if (!inst.graph.is_tree()) throw GraphError("extra exploration is defined on trees");
  if (!inst.has_goal()) throw GraphError("extra exploration needs a goal");
  TreeView tree(inst.graph, inst.graph.root());
  std::int64_t off_path = 0;
  for (Vertex v : visited)
    if (!tree.is_ancestor(v, inst.goal)) ++off_path;
  return off_path;
}

}  // namespace predsearch
