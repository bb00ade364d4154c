#include "predsearch/known_dist.hpp"

#include <ostream>

namespace predsearch {

std::optional<std::int64_t> anchor_level(std::int64_t level, Prediction prediction,
                                         std::int64_t distance) {
  const std::int64_t twice = distance + level - prediction;
  if (twice < 0 || twice % 2 != 0) return std::nullopt;
  const std::int64_t alpha = twice / 2;
  if (alpha > level) return std::nullopt;
  return alpha;
}

bool critical_condition(std::int64_t load_j, std::int64_t min_other_load, std::int64_t visited_j) {
  return load_j >= 2 * min_other_load && 2 * load_j >= visited_j;
}

const char* to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::kGoalFound: return "goal_found";
    case RunOutcome::kBudgetExhausted: return "budget_exhausted";
    case RunOutcome::kTreeExhausted: return "tree_exhausted";
  }
  return "?";
}

void write_step_record(std::ostream& out, const StepRecord& step) {
  out << "t=" << step.t << " v=" << step.position << " anchor=";
  if (step.anchor == kNoVertex)
    out << '-';
  else
    out << step.anchor;
  out << " callback=" << (step.callback ? 1 : 0) << " q=" << step.chosen_child
      << " next=" << step.next << '\n';
}

KnownDistExplorer::KnownDistExplorer(ExplorationView& view, std::int64_t distance,
                                     std::int64_t budget)
    : view_(&view),
      root_(view.position()),
      distance_(distance),
      budget_(budget),
      position_(root_),
      goal_found_(view.goal_found()) {
  const auto n = static_cast<std::size_t>(view.id_bound());
  visited_.assign(n, 0);
  parent_.assign(n, kNoVertex);
  level_.assign(n, 0);
  children_.assign(n, {});
  child_index_.assign(n, -1);
  anchor_.assign(n, kNoVertex);
  anchor_child_.assign(n, -1);
  load_.assign(n, {});
  subtree_visited_.assign(n, 0);
  subtree_frontier_.assign(n, 0);
  active_children_.assign(n, 0);
  memory_.assign(n, kNoVertex);
  subtree_frontier_[root_] = 1;
  visit(root_);
}

std::int64_t KnownDistExplorer::total_load(Vertex v) const {
  std::int64_t sum = 0;
  for (std::int64_t x : load_[v]) sum += x;
  return sum;
}

void KnownDistExplorer::visit(Vertex v) {
  visited_[v] = 1;
  order_.push_back(v);

  for (const Arc& a : view_->neighbors(v)) {
    if (a.to == parent_[v]) continue;
    if (is_observed(a.to)) throw NotATree("cycle through vertex " + std::to_string(a.to));
    parent_[a.to] = v;
    level_[a.to] = level_[v] + 1;
    child_index_[a.to] = static_cast<int>(children_[v].size());
    children_[v].push_back(a.to);
    subtree_frontier_[a.to] = 1;
  }
  const auto child_count = static_cast<std::int64_t>(children_[v].size());
  load_[v].assign(children_[v].size(), 0);
  active_children_[v] = static_cast<int>(child_count);

  const auto alpha = anchor_level(level_[v], view_->prediction(v), distance_);
  if (alpha && *alpha == level_[v]) anchor_[v] = v;

  // v leaves the frontier and its children join it.
  const std::int64_t frontier_delta = child_count - 1;
  for (Vertex x = v; x != kNoVertex; x = parent_[x]) {
    const std::int64_t before = subtree_frontier_[x];
    subtree_frontier_[x] += frontier_delta;
    const Vertex up = parent_[x];
    if (up != kNoVertex && (before > 0) != (subtree_frontier_[x] > 0))
      active_children_[up] += subtree_frontier_[x] > 0 ? 1 : -1;
    subtree_visited_[x] += 1;
    memory_[x] = v;
    if (alpha && up != kNoVertex && level_[x] == *alpha + 1) {
      anchor_[v] = up;
      anchor_child_[v] = child_index_[x];
      load_[up][child_index_[x]] += 1;
    }
  }
}

int KnownDistExplorer::argmin_active_load(Vertex v, int excluded) const {
  int best = -1;
  for (int i = 0; i < static_cast<int>(children_[v].size()); ++i) {
    if (i == excluded || !is_active(children_[v][i])) continue;
    if (best < 0 || load_[v][i] < load_[v][best]) best = i;
  }
  return best;
}

bool KnownDistExplorer::is_critical(Vertex v, int j) const {
  if (!visited_[v] || !is_active(v) || active_children_[v] < 2) return false;
  if (j < 0 || j >= static_cast<int>(children_[v].size())) return false;
  const int q = argmin_active_load(v, j);
  if (q < 0) return false;
  return critical_condition(load_[v][j], load_[v][q], subtree_visited_[children_[v][j]]);
}

bool KnownDistExplorer::has_unvisited_child(Vertex v) const {
  for (Vertex c : children_[v])
    if (!visited_[c]) return true;
  return false;
}

Vertex KnownDistExplorer::smallest_prediction_child(Vertex v) const {
  Vertex best = kNoVertex;
  Prediction best_f = 0;
  for (Vertex c : children_[v]) {
    if (visited_[c]) continue;
    const Prediction f = view_->prediction(c);
    if (best == kNoVertex || f < best_f) {
      best = c;
      best_f = f;
    }
  }
  return best;
}

std::optional<RunOutcome> KnownDistExplorer::finished() const {
  if (goal_found_) return RunOutcome::kGoalFound;
  if (exhausted_) return RunOutcome::kTreeExhausted;
  if (static_cast<std::int64_t>(order_.size()) >= budget_) return RunOutcome::kBudgetExhausted;
  return std::nullopt;
}

bool KnownDistExplorer::step(const StepObserver& observer) {
  if (finished()) return false;

  StepRecord record;
  record.t = t_;
  record.position = position_;
  record.anchor = anchor_[position_];

  Vertex next = kNoVertex;
  Vertex u = position_;
  const Vertex a = anchor_[position_];
  if (a != kNoVertex && a != position_ && is_critical(a, anchor_child_[position_])) {
    const int q = argmin_active_load(a, -1);
    record.callback = true;
    record.chosen_child = q;
    const Vertex c = children_[a][q];
    if (!visited_[c])
      next = c;
    else
      u = memory_[c];
  }

  while (next == kNoVertex && !has_unvisited_child(u)) {
    Vertex w = u;
    while (w != kNoVertex && !is_active(w)) w = parent_[w];
    if (w == kNoVertex) {
      exhausted_ = true;
      return false;
    }
    const Vertex c = children_[w][argmin_active_load(w, -1)];
    if (!visited_[c])
      next = c;
    else
      u = memory_[c];
  }
  if (next == kNoVertex) next = smallest_prediction_child(u);

  record.next = next;
  if (observer) observer(*this, record);

  const bool reached = view_->move_to(next);
  visit(next);
  position_ = next;
  ++t_;
  goal_found_ = reached;
  return true;
}

RunOutcome KnownDistExplorer::run(const StepObserver& observer) {
  while (step(observer)) {
  }
  return *finished();
}

}  // namespace predsearch
