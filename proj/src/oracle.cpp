#include "predsearch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "predsearch/rng.hpp"

namespace predsearch {

Length optimal_cost(const Instance& inst) {
  if (!inst.has_goal()) throw GraphError("optimal cost needs a goal");
  return all_distances(inst.graph, inst.graph.root())[inst.goal];
}

BaselineResult baseline_explore(ExplorationView& view, Baseline strategy, std::int64_t step_cap) {
  BaselineResult result;
  if (strategy == Baseline::kBlindDfs) {
    std::vector<Vertex> stack{view.position()};
    while (!view.goal_found() && !stack.empty() && result.steps < step_cap) {
      const Vertex u = stack.back();
      Vertex next = kNoVertex;
      for (const Arc& a : view.neighbors(u)) {
        if (!view.is_visited(a.to)) {
          next = a.to;
          break;
        }
      }
      if (next != kNoVertex) {
        view.move_to(next);
        stack.push_back(next);
      } else {
        stack.pop_back();
        if (stack.empty()) break;
        view.move_to(stack.back());
      }
      ++result.steps;
    }
  } else {
    while (!view.goal_found() && result.steps < step_cap) {
      const Vertex u = view.position();
      const auto arcs = view.neighbors(u);
      if (arcs.empty()) break;
      const Prediction want = view.prediction(u) - 1;
      auto better = [&](Vertex a, Vertex b) {
        if (b == kNoVertex) return true;
        const Prediction fa = view.prediction(a);
        const Prediction fb = view.prediction(b);
        return fa != fb ? fa < fb : a < b;
      };
      Vertex downhill_new = kNoVertex;
      Vertex downhill_old = kNoVertex;
      Vertex fresh = kNoVertex;
      Vertex any = kNoVertex;
      for (const Arc& a : arcs) {
        const Vertex v = a.to;
        const bool seen = view.is_visited(v);
        if (view.prediction(v) == want) {
          Vertex& slot = seen ? downhill_old : downhill_new;
          if (slot == kNoVertex || v < slot) slot = v;
        }
        if (!seen && better(v, fresh)) fresh = v;
        if (better(v, any)) any = v;
      }
      Vertex next = downhill_new;
      if (next == kNoVertex) next = downhill_old;
      if (next == kNoVertex) next = fresh;
      if (next == kNoVertex) next = any;
      view.move_to(next);
      ++result.steps;
    }
  }
  result.found = view.goal_found();
  result.capped = !result.found && result.steps >= step_cap;
  return result;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {
      "extra-exploration", "extra-exploration-prefix", "cost-decomposition", "anchor-lca", "min-load-entry",
      "load-trichotomy",   "separator",          "estimate-recovery", "estimate-recovery-visited",
      "root-drift",        "phi-midpoint",      "phi-distance",       "phi1-distance", "steiner-size",
      "transition-cost",   "tour-cost",          "steiner-length", "net-ball",
      "net-ball-weighted", "search-order"};
  return ids;
}

std::vector<std::string> applicable_lemmas(const std::string& algorithm) {
  if (algorithm == "known-dist")
    return {"extra-exploration", "cost-decomposition", "anchor-lca", "min-load-entry",
            "load-trichotomy"};
  if (algorithm == "treex") return {"separator", "estimate-recovery", "estimate-recovery-visited", "root-drift"};
  if (algorithm == "fullinfo-l0")
    return {"phi-distance", "steiner-size", "transition-cost", "tour-cost", "steiner-length",
            "net-ball", "search-order"};
  if (algorithm == "fullinfo-l1")
    return {"phi1-distance", "transition-cost", "tour-cost", "steiner-length",
            "net-ball-weighted", "search-order"};
  return {};
}

namespace {

CheckResult not_applicable(std::string why) {
  CheckResult r;
  r.applicable = false;
  r.witness = std::move(why);
  return r;
}

CheckResult failure(std::string witness) {
  CheckResult r;
  r.pass = false;
  r.witness = std::move(witness);
  return r;
}

template <class... Parts>
std::string describe(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

bool known_dist_setting(const Instance& inst, const RunTrace& trace) {
  return trace.algorithm == "known-dist" && inst.has_goal() && inst.graph.is_tree() &&
         inst.graph.unit_lengths();
}

// Independent recount of the known-distance explorer's bookkeeping, driven
// only by the instance, the start vertex, D and the sequence of positions.
class LoadReplay {
 public:
  LoadReplay(const Instance& inst, Vertex root, std::int64_t distance)
      : tree_(inst.graph, root) {
    const auto n = static_cast<std::size_t>(inst.graph.size());
    anchor_.assign(n, kNoVertex);
    anchor_head_.assign(n, kNoVertex);
    for (Vertex u = 0; u < inst.graph.size(); ++u) {
      const std::int64_t twice = distance + tree_.level(u) - inst.predictions[u];
      if (twice < 0 || twice % 2 != 0 || twice / 2 > tree_.level(u)) continue;
      const std::int64_t alpha = twice / 2;
      anchor_[u] = tree_.ancestor_at_level(u, alpha);
      if (alpha < tree_.level(u)) anchor_head_[u] = tree_.ancestor_at_level(u, alpha + 1);
    }
    visited_.assign(n, 0);
    sub_visited_.assign(n, 0);
    sub_frontier_.assign(n, 0);
    load_.assign(n, 0);
    sub_frontier_[root] = 1;
    visit(root);
  }

  void visit(Vertex u) {
    if (visited_[u]) return;
    visited_[u] = 1;
    const auto kids = static_cast<std::int64_t>(tree_.children(u).size());
    for (Vertex c : tree_.children(u)) sub_frontier_[c] = 1;
    for (Vertex a = u; a != kNoVertex; a = tree_.parent(a)) {
      sub_frontier_[a] += kids - 1;
      sub_visited_[a] += 1;
    }
    if (anchor_head_[u] != kNoVertex) load_[anchor_head_[u]] += 1;
  }

  const TreeView& tree() const { return tree_; }
  bool visited(Vertex v) const { return visited_[v] != 0; }
  Vertex anchor(Vertex u) const { return anchor_[u]; }
  // Load at the parent for the child subtree headed by `head`.
  std::int64_t load(Vertex head) const { return load_[head]; }
  std::int64_t sub_visited(Vertex v) const { return sub_visited_[v]; }
  bool active(Vertex v) const { return sub_frontier_[v] > 0; }

  // Child of `v` whose subtree holds `x` (x strictly below v).
  Vertex head_towards(Vertex v, Vertex x) const { return tree_.ancestor_at_level(x, tree_.level(v) + 1); }

 private:
  TreeView tree_;
  std::vector<Vertex> anchor_;
  std::vector<Vertex> anchor_head_;
  std::vector<char> visited_;
  std::vector<std::int64_t> sub_visited_;
  std::vector<std::int64_t> sub_frontier_;
  std::vector<std::int64_t> load_;
};

enum class ExtraForm { kAtGoal, kEveryStep, kCost };

CheckResult check_extra_and_cost(const Instance& inst, const RunTrace& trace, ExtraForm form) {
  if (!known_dist_setting(inst, trace)) return not_applicable("needs a known-dist run on a unit tree");
  const TreeView tree(inst.graph, trace.root);
  const auto wrong = erroneous_set(inst);
  std::vector<char> is_wrong(static_cast<std::size_t>(inst.graph.size()), 0);
  for (Vertex v : wrong) is_wrong[v] = 1;
  const std::int64_t delta = inst.graph.max_degree();

  std::vector<char> seen(static_cast<std::size_t>(inst.graph.size()), 0);
  std::int64_t extra = 0;
  std::int64_t errors = 0;
  CheckResult result;
  const auto pos = positions(trace);
  for (std::size_t t = 0; t < pos.size(); ++t) {
    const Vertex v = pos[t];
    if (!seen[v]) {
      seen[v] = 1;
      if (!tree.is_ancestor(v, inst.goal)) ++extra;
      if (is_wrong[v]) ++errors;
    }
    const Length cost = t == 0 ? 0 : trace.moves[t - 1].cumulative_cost;
    if (form == ExtraForm::kAtGoal && t + 1 < pos.size()) continue;
    if (form == ExtraForm::kCost) {
      const Length bound = tree.depth(v) + 10 * extra + 16 * errors;
      if (cost > bound)
        return failure(describe("t=", t, " v=", v, " cost=", cost, " > ", bound, " (extra=", extra,
                                " errors=", errors, ")"));
      result.measured = std::max(result.measured, static_cast<double>(cost - tree.depth(v)));
    } else {
      if (extra > 7 * delta * errors)
        return failure(describe("t=", t, " extra=", extra, " > 7*", delta, "*", errors));
      result.measured = static_cast<double>(extra);
    }
  }
  return result;
}

CheckResult check_anchor_lca(const Instance& inst, const RunTrace& trace) {
  if (!known_dist_setting(inst, trace)) return not_applicable("needs a known-dist run on a unit tree");
  const LoadReplay replay(inst, trace.root, trace.distance);
  const TreeView& tree = replay.tree();
  if (trace.distance != tree.distance(trace.root, inst.goal))
    return not_applicable("D differs from d(r, g)");
  const auto goal_dist = all_distances(inst.graph, inst.goal);
  CheckResult result;
  // Anchors the explorer reported must match the formula, and correct
  // vertices must anchor at their lca with the goal.
  for (const auto& [u, anchor] : trace.anchors) {
    if (anchor != replay.anchor(u))
      return failure(describe("u=", u, " reported anchor ", anchor, " but the formula gives ", replay.anchor(u)));
    if (inst.predictions[u] == goal_dist[u] && anchor != tree.lca(u, inst.goal))
      return failure(describe("u=", u, " anchor=", anchor, " lca=", tree.lca(u, inst.goal)));
    result.measured += 1;
  }
  std::vector<char> seen(static_cast<std::size_t>(inst.graph.size()), 0);
  for (Vertex u : positions(trace)) {
    if (seen[u]) continue;
    seen[u] = 1;
    if (inst.predictions[u] != goal_dist[u]) continue;
    const Vertex want = tree.lca(u, inst.goal);
    if (replay.anchor(u) != want)
      return failure(describe("u=", u, " anchor=", replay.anchor(u), " lca=", want));
  }
  return result;
}

CheckResult check_min_load_entry(const Instance& inst, const RunTrace& trace) {
  if (!known_dist_setting(inst, trace)) return not_applicable("needs a known-dist run on a unit tree");
  LoadReplay replay(inst, trace.root, trace.distance);
  const TreeView& tree = replay.tree();
  const auto pos = positions(trace);
  CheckResult result;
  for (std::size_t t = 0; t + 1 < pos.size(); ++t) {
    const Vertex from = pos[t];
    const Vertex to = pos[t + 1];
    const Vertex v = tree.lca(from, to);
    if (v != from && v != to) {
      const Vertex head_j = replay.head_towards(v, from);
      const Vertex head_i = replay.head_towards(v, to);
      std::int64_t min_active = -1;
      for (Vertex c : tree.children(v))
        if (replay.active(c) && (min_active < 0 || replay.load(c) < min_active)) min_active = replay.load(c);
      result.measured += 1;
      if (head_i != head_j && min_active >= 0 && replay.load(head_i) > min_active)
        return failure(describe("t=", t, " at v=", v, " entered child ", head_i, " with load ",
                                replay.load(head_i), " > min active load ", min_active));
    }
    replay.visit(to);
  }
  return result;
}

CheckResult check_load_trichotomy(const Instance& inst, const RunTrace& trace) {
  if (!known_dist_setting(inst, trace)) return not_applicable("needs a known-dist run on a unit tree");
  LoadReplay replay(inst, trace.root, trace.distance);
  const TreeView& tree = replay.tree();
  const auto path = tree.path(trace.root, inst.goal);
  const auto pos = positions(trace);
  CheckResult result;
  for (std::size_t t = 0; t < pos.size(); ++t) {
    replay.visit(pos[t]);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const Vertex v = path[k];
      if (!replay.visited(v)) break;
      const Vertex goal_side = path[k + 1];
      const std::int64_t s1 = replay.load(goal_side);
      for (Vertex c : tree.children(v)) {
        if (c == goal_side) continue;
        const std::int64_t si = replay.load(c);
        const std::int64_t ci = replay.sub_visited(c);
        const bool ok = si <= 2 * s1 || 2 * si <= ci || (si == 1 && ci == 1 && s1 == 0);
        if (!ok)
          return failure(describe("t=", t, " v=", v, " child=", c, " sigma_i=", si, " |C_i|=", ci,
                                  " sigma_1=", s1));
        result.measured += 1;
      }
    }
  }
  return result;
}

// Components of the member set minus `center`, by brute-force search.
std::vector<std::int64_t> component_sizes(const Graph& graph, const std::vector<char>& member,
                                          Vertex center) {
  std::vector<std::int64_t> sizes;
  std::vector<char> done(member.size(), 0);
  done[center] = 1;
  for (const Arc& start : graph.neighbors(center)) {
    if (!member[start.to] || done[start.to]) continue;
    std::vector<Vertex> queue{start.to};
    done[start.to] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Arc& a : graph.neighbors(queue[head]))
        if (member[a.to] && !done[a.to]) {
          done[a.to] = 1;
          queue.push_back(a.to);
        }
    sizes.push_back(static_cast<std::int64_t>(queue.size()));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::string separator_violation(const Graph& graph, const std::vector<char>& member,
                                std::int64_t n, Vertex center, std::int64_t delta) {
  const auto sizes = component_sizes(graph, member, center);
  if (sizes.size() < 2) return describe("center ", center, " leaves fewer than two components");
  if (2 * sizes[0] > n) return describe("center ", center, " is no centroid: component ", sizes[0], " of ", n);
  if (2 * delta * sizes[1] <= n)
    return describe("center ", center, " second component ", sizes[1], " <= ", n, "/(2*", delta, ")");
  return {};
}

// Splits a tree-explorer move log into rounds by cumulative cost.
std::vector<std::vector<Vertex>> visited_after_rounds(const RunTrace& trace, Vertex n) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> visited{trace.root};
  seen[trace.root] = 1;
  std::size_t m = 0;
  for (const RoundRecord& round : trace.rounds) {
    while (m < trace.moves.size() && trace.moves[m].cumulative_cost <= round.cumulative_cost) {
      const Vertex v = trace.moves[m++].to;
      if (!seen[v]) {
        seen[v] = 1;
        visited.push_back(v);
      }
    }
    out.push_back(visited);
  }
  return out;
}

CheckResult check_separator(const Instance& inst, const RunTrace& trace) {
  if (!inst.graph.is_tree()) return not_applicable("needs a tree");
  const std::int64_t delta = inst.graph.max_degree();
  const Graph& graph = inst.graph;
  CheckResult result;
  if (trace.rounds.empty()) {
    const std::int64_t n = graph.size();
    if (n <= 2 * delta) return not_applicable("tree has at most 2*Delta vertices");
    const CentroidSplit split = centroid_split(TreeView(graph, graph.root()), static_cast<int>(delta));
    std::vector<char> member(static_cast<std::size_t>(n), 1);
    if (auto why = separator_violation(graph, member, n, split.center, delta); !why.empty()) return failure(why);
    // The returned heads must be the two largest components.
    const auto sizes = component_sizes(graph, member, split.center);
    if (split.size_a != sizes[0] || split.size_b != sizes[1])
      return failure(describe("reported sizes ", split.size_a, "/", split.size_b, " differ from ",
                              sizes[0], "/", sizes[1]));
    result.measured = static_cast<double>(sizes[1]) * 2.0 * static_cast<double>(delta) / static_cast<double>(n);
    return result;
  }
  const auto after = visited_after_rounds(trace, graph.size());
  for (std::size_t rho = 0; rho + 1 < trace.rounds.size(); ++rho) {
    const auto& set = after[rho];
    const auto n = static_cast<std::int64_t>(set.size());
    if (n <= 2 * delta) continue;
    std::vector<char> member(static_cast<std::size_t>(graph.size()), 0);
    for (Vertex v : set) member[v] = 1;
    const Vertex center = trace.rounds[rho + 1].root;
    if (!member[center]) return failure(describe("round ", rho + 1, " root ", center, " was never visited"));
    if (auto why = separator_violation(graph, member, n, center, delta); !why.empty())
      return failure(describe("round ", rho + 1, ": ", why));
    result.measured += 1;
  }
  return result;
}

// by_visited: gate on the voting tree, |T^rho| > 4*Delta*|E|, instead of the round budget.
CheckResult check_estimate_recovery(const Instance& inst, const RunTrace& trace, bool by_visited) {
  if (trace.rounds.empty() || !inst.has_goal() || !inst.graph.is_tree())
    return not_applicable("needs a tree-explorer trace with a goal");
  const auto errors = static_cast<std::int64_t>(erroneous_set(inst).size());
  const std::int64_t delta = inst.graph.max_degree();
  const auto after = visited_after_rounds(trace, inst.graph.size());
  CheckResult result;
  for (std::size_t rho = 0; rho < trace.rounds.size(); ++rho) {
    const RoundRecord& r = trace.rounds[rho];
    if (rho > 0 && trace.rounds[rho - 1].goal_found) break;
    const std::int64_t threshold = 4 * errors * (2 * delta + 1);
    const std::int64_t tree_size = rho == 0 ? 1 : static_cast<std::int64_t>(after[rho - 1].size());
    if (by_visited) {
      if (rho == 0 ? errors > 0 : tree_size <= 4 * delta * errors || trace.rounds[rho - 1].split_skipped)
        continue;
    } else if (r.base_budget < threshold) {
      continue;
    }
    const Length truth = all_distances(inst.graph, r.root)[inst.goal];
    result.measured += 1;
    if (r.estimate != truth) {
      return failure(describe("round ", rho, " B=", r.base_budget, " >= ", threshold, " but D=", r.estimate,
                              " != d(r_rho,g)=", truth, " (|T|=", tree_size, ", 4*Delta*|E|=",
                              4 * delta * errors, ")"));
    }
  }
  return result;
}

CheckResult check_root_drift(const Instance& inst, const RunTrace& trace) {
  if (trace.rounds.empty()) return not_applicable("needs a tree-explorer trace");
  const auto from_root = all_distances(inst.graph, trace.root);
  CheckResult result;
  for (const RoundRecord& r : trace.rounds) {
    const Length d = from_root[r.root];
    if (d > 2 * r.base_budget)
      return failure(describe("round ", r.rho, " d(r_rho, r)=", d, " > 2*", r.base_budget));
    result.measured = std::max(result.measured, static_cast<double>(d) / static_cast<double>(r.base_budget));
  }
  return result;
}

CheckResult check_phi_distance(const Instance& inst, ErrorMode mode) {
  if (mode == ErrorMode::kL0 && !inst.graph.unit_lengths()) return not_applicable("needs unit lengths");
  const auto dist = all_pairs_distances(inst.graph);
  const auto phi = implied_error_serial(inst, mode, dist);
  return check_phi_pairs(phi, dist, mode == ErrorMode::kL0 ? 1 : 2);
}

CheckResult check_phi_midpoint_samples(const Instance& inst) {
  if (inst.graph.size() > 400) return not_applicable("instance too large for midpoint sampling");
  const auto dist = all_pairs_distances(inst.graph);
  const auto phi = implied_error_serial(inst, ErrorMode::kL0, dist);
  SplitMix64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(inst.graph.size()));
  const auto n = static_cast<std::uint64_t>(inst.graph.size());
  CheckResult result;
  for (int sample = 0; sample < 200; ++sample) {
    std::vector<Vertex> s_set;
    std::vector<Vertex> u_set;
    for (Vertex v = 0; v < inst.graph.size(); ++v)
      if (rng.below(2) == 0) s_set.push_back(v);
    const auto u_size = 1 + rng.below(std::min<std::uint64_t>(4, n));
    while (u_set.size() < u_size) {
      const auto v = static_cast<Vertex>(rng.below(n));
      if (std::find(u_set.begin(), u_set.end(), v) == u_set.end()) u_set.push_back(v);
    }
    auto r = check_phi_midpoint(phi, s_set, u_set, dist);
    if (!r.pass) return r;
    result.measured += 1;
  }
  return result;
}

bool planner_trace(const RunTrace& trace) {
  return trace.algorithm == "fullinfo-l0" || trace.algorithm == "fullinfo-l1";
}

CheckResult check_steiner_size(const Instance& inst, const RunTrace& trace) {
  if (!planner_trace(trace) || trace.mode != ErrorMode::kL0 || !inst.graph.is_tree())
    return not_applicable("needs an l0 planner trace on a tree");
  const std::int64_t delta = inst.graph.max_degree();
  CheckResult result;
  for (const PlanRound& r : trace.plan) {
    if (r.members.empty()) continue;
    const auto size = static_cast<std::int64_t>(r.steiner.vertices.size());
    const std::int64_t bound = r.rho == 0 ? 1 : delta * ((std::int64_t{1} << r.rho) + 1);
    if (size > bound) return failure(describe("round ", r.rho, " |C|=", size, " > ", bound));
    result.measured = std::max(result.measured, static_cast<double>(size) / static_cast<double>(bound));
  }
  return result;
}

CheckResult check_transition_cost(const Instance& inst, const RunTrace& trace) {
  if (!planner_trace(trace) || !inst.has_goal()) return not_applicable("needs a planner trace with a goal");
  const auto dist = all_pairs_distances(inst.graph);
  const auto phi = implied_error_serial(inst, trace.mode, dist);
  const Vertex r = trace.root;
  const Length d_rg = dist(r, inst.goal);
  const std::int64_t error = phi[inst.goal];
  Vertex prev = r;
  bool moved_away = false;
  CheckResult result;
  for (const PlanRound& round : trace.plan) {
    if (round.members.empty()) continue;
    const Length d = dist(prev, round.anchor);
    if (d != round.transition_cost)
      return failure(describe("round ", round.rho, " recorded transition ", round.transition_cost,
                              " != d(r_prev, r_rho)=", d));
    const std::int64_t pow = std::int64_t{1} << round.rho;
    if (!moved_away) {
      if (round.anchor != r) {
        moved_away = true;
        const std::int64_t extra = round.rho > 0 ? pow : 0;
        // l1 mode halves the implied-error terms.
        const bool ok = trace.mode == ErrorMode::kL0 ? d <= d_rg + error + extra
                                                     : 2 * d <= 2 * d_rg + error + extra;
        if (!ok)
          return failure(describe("first transition in round ", round.rho, " costs ", d,
                                  " against d(r,g)=", d_rg, " error=", error));
      }
    } else if (d > 2 * pow) {
      return failure(describe("round ", round.rho, " transition ", d, " > 2^(rho+1)=", 2 * pow));
    }
    result.measured = std::max(result.measured, static_cast<double>(d));
    prev = round.anchor;
  }
  return result;
}

Length edge_length_between(const Graph& graph, Vertex u, Vertex v) {
  for (const Arc& a : graph.neighbors(u))
    if (a.to == v) return a.length;
  return -1;
}

CheckResult check_tour_cost(const Instance& inst, const RunTrace& trace) {
  if (!planner_trace(trace)) return not_applicable("needs a planner trace");
  CheckResult result;
  for (const PlanRound& r : trace.plan) {
    if (r.members.empty()) continue;
    Length walked = 0;
    for (std::size_t i = 1; i < r.tour.size(); ++i) {
      const Length len = edge_length_between(inst.graph, r.tour[i - 1], r.tour[i]);
      if (len < 0) return failure(describe("round ", r.rho, " tour jumps ", r.tour[i - 1], "->", r.tour[i]));
      walked += len;
    }
    if (walked != r.tour_cost)
      return failure(describe("round ", r.rho, " recorded tour cost ", r.tour_cost, " != walked ", walked));
    Length steiner = 0;
    for (const EdgeSpec& e : r.steiner.edges) steiner += e.length;
    if (r.tour_cost > 2 * steiner)
      return failure(describe("round ", r.rho, " tour ", r.tour_cost, " > 2*", steiner));
    if (!r.goal_found && (r.tour.empty() || r.tour.front() != r.anchor || r.tour.back() != r.anchor))
      return failure(describe("round ", r.rho, " tour does not return to its anchor"));
    result.measured += 1;
  }
  return result;
}

CheckResult check_steiner_length(const RunTrace& trace) {
  if (!planner_trace(trace)) return not_applicable("needs a planner trace");
  CheckResult result;
  for (const PlanRound& r : trace.plan) {
    if (r.members.empty()) continue;
    const double scale = static_cast<double>(std::int64_t{1} << (2 * std::min<std::int64_t>(r.rho, 30)));
    result.measured = std::max(result.measured, static_cast<double>(r.steiner.length) / scale);
  }
  return result;
}

CheckResult check_net_balls(const Instance& inst, const RunTrace& trace, ErrorMode mode) {
  if (!planner_trace(trace) || trace.mode != mode)
    return not_applicable(mode == ErrorMode::kL0 ? "needs an l0 planner trace" : "needs an l1 planner trace");
  if (mode == ErrorMode::kL0 && !inst.graph.unit_lengths()) return not_applicable("needs unit lengths");
  const auto dist = all_pairs_distances(inst.graph);
  const auto phi = implied_error_serial(inst, mode, dist);
  CheckResult result;
  for (const PlanRound& r : trace.plan) {
    if (r.members.size() < 2) continue;
    const NetBalls net = greedy_net(r.members, dist);
    const std::int64_t cap = std::int64_t{2} << r.rho;
    for (std::size_t i = 0; i < net.centers.size(); ++i) {
      const Vertex c = net.centers[i];
      const Vertex w = dist(c, net.far_b) > dist(c, net.far_a) ? net.far_b : net.far_a;
      const auto ball = static_cast<std::int64_t>(net.balls[i].size());
      if (mode == ErrorMode::kL0) {
        if (ball > phi[c] + phi[w] || ball > cap)
          return failure(describe("round ", r.rho, " center ", c, " |B|=", ball, " phi(c)+phi(w)=",
                                  phi[c] + phi[w], " 2^(rho+1)=", cap));
        result.measured = std::max(result.measured, static_cast<double>(ball) / static_cast<double>(cap));
      } else {
        if (ball * net.diameter > 4 * (phi[w] + phi[c]) || ball * net.diameter > 4 * cap)
          return failure(describe("round ", r.rho, " center ", c, " |B|*R=", ball * net.diameter,
                                  " > 4*(", phi[w], "+", phi[c], ") or 4*2^(rho+1)=", 4 * cap));
        result.measured = std::max(result.measured, static_cast<double>(ball * net.diameter) /
                                                        static_cast<double>(std::int64_t{1} << r.rho));
      }
    }
  }
  return result;
}

CheckResult check_search_order(const Instance& inst, const RunTrace& trace) {
  if (!planner_trace(trace)) return not_applicable("needs a planner trace");
  const auto dist = all_pairs_distances(inst.graph);
  const auto phi = implied_error_serial(inst, trace.mode, dist);
  std::vector<char> seen(static_cast<std::size_t>(inst.graph.size()), 0);
  seen[trace.root] = 1;
  std::size_t m = 0;
  std::int64_t found_round = -1;
  CheckResult result;
  for (const PlanRound& r : trace.plan) {
    if (r.members.empty()) continue;
    std::vector<char> in_tree(seen.size(), 0);
    for (Vertex v : r.steiner.vertices) in_tree[v] = 1;
    for (Vertex v : r.members) {
      if (phi[v] >= r.threshold) return failure(describe("round ", r.rho, " member ", v, " has phi ", phi[v]));
      if (r.rho > 0 && phi[v] < r.threshold / 2)
        return failure(describe("round ", r.rho, " member ", v, " belongs to an earlier round"));
    }
    const std::size_t round_moves = (r.transition_cost > 0 ? 1 : 0) + (r.tour.empty() ? 0 : r.tour.size() - 1);
    for (std::size_t i = 0; i < round_moves && m < trace.moves.size(); ++i, ++m) {
      const Vertex v = trace.moves[m].to;
      if (!seen[v] && !in_tree[v])
        return failure(describe("round ", r.rho, " first visit of ", v, " outside its Steiner tree"));
      seen[v] = 1;
    }
    if (r.goal_found) {
      found_round = r.rho;
      break;
    }
    for (Vertex v : r.members)
      if (!seen[v]) return failure(describe("round ", r.rho, " ended with member ", v, " unvisited"));
    result.measured += 1;
  }
  if (inst.has_goal()) {
    if (found_round < 0 && inst.goal != trace.root) return failure("goal never found");
    std::int64_t goal_round = 0;
    while ((std::int64_t{1} << goal_round) <= phi[inst.goal]) ++goal_round;
    if (found_round > goal_round)
      return failure(describe("goal found in round ", found_round, " after its own round ", goal_round));
  }
  return result;
}

}  // namespace

std::vector<Vertex> midpoint_set(std::span<const Vertex> u_set, const DistanceMatrix& dist) {
  std::vector<Vertex> out;
  for (Vertex w = 0; w < dist.size(); ++w) {
    bool equal = true;
    for (Vertex u : u_set) equal = equal && dist(w, u) == dist(w, u_set.front());
    if (equal) out.push_back(w);
  }
  return out;
}

CheckResult check_phi_pairs(std::span<const std::int64_t> phi, const DistanceMatrix& dist, Length factor) {
  CheckResult result;
  for (Vertex u = 0; u < dist.size(); ++u)
    for (Vertex v = u + 1; v < dist.size(); ++v) {
      if (factor * dist(u, v) > phi[u] + phi[v]) {
        result.pass = false;
        result.witness = describe("u=", u, " v=", v, " d=", dist(u, v), " phi=", phi[u], "+", phi[v]);
        return result;
      }
      result.measured += 1;
    }
  return result;
}

CheckResult check_phi_midpoint(std::span<const std::int64_t> phi, std::span<const Vertex> s_set,
                               std::span<const Vertex> u_set, const DistanceMatrix& dist) {
  const auto mid = midpoint_set(u_set, dist);
  std::int64_t outside = 0;
  for (Vertex s : s_set)
    if (!std::binary_search(mid.begin(), mid.end(), s)) ++outside;
  std::int64_t sum = 0;
  for (Vertex u : u_set) sum += phi[u];
  CheckResult result;
  result.measured = static_cast<double>(outside);
  if (sum < outside) {
    result.pass = false;
    result.witness = describe("sum phi(U)=", sum, " < |S \\ M(U)|=", outside, " with |U|=", u_set.size());
  }
  return result;
}

NetBalls greedy_net(std::span<const Vertex> members, const DistanceMatrix& dist) {
  NetBalls out;
  if (members.empty()) return out;
  std::vector<Vertex> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  out.far_a = out.far_b = sorted.front();
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (dist(sorted[i], sorted[j]) > out.diameter) {
        out.diameter = dist(sorted[i], sorted[j]);
        out.far_a = sorted[i];
        out.far_b = sorted[j];
      }
  std::vector<Length> to_net(sorted.size(), kInfiniteLength);
  Vertex next = sorted.front();
  while (true) {
    out.centers.push_back(next);
    for (std::size_t i = 0; i < sorted.size(); ++i) to_net[i] = std::min(to_net[i], dist(sorted[i], next));
    std::size_t far = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (to_net[i] > to_net[far]) far = i;
    if (8 * to_net[far] <= out.diameter) break;  // every member within R/8 of the net
    next = sorted[far];
  }
  out.balls.assign(out.centers.size(), {});
  for (Vertex s : sorted) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.centers.size(); ++i)
      if (dist(s, out.centers[i]) < dist(s, out.centers[best])) best = i;
    out.balls[best].push_back(s);
  }
  return out;
}

CheckResult check_lemma(const Instance& inst, const RunTrace& trace, const std::string& id) {
  if (id == "extra-exploration") return check_extra_and_cost(inst, trace, ExtraForm::kAtGoal);
  if (id == "extra-exploration-prefix") return check_extra_and_cost(inst, trace, ExtraForm::kEveryStep);
  if (id == "cost-decomposition") return check_extra_and_cost(inst, trace, ExtraForm::kCost);
  if (id == "anchor-lca") return check_anchor_lca(inst, trace);
  if (id == "min-load-entry") return check_min_load_entry(inst, trace);
  if (id == "load-trichotomy") return check_load_trichotomy(inst, trace);
  if (id == "separator") return check_separator(inst, trace);
  if (id == "estimate-recovery") return check_estimate_recovery(inst, trace, false);
  if (id == "estimate-recovery-visited") return check_estimate_recovery(inst, trace, true);
  if (id == "root-drift") return check_root_drift(inst, trace);
  if (id == "phi-midpoint") return check_phi_midpoint_samples(inst);
  if (id == "phi-distance") return check_phi_distance(inst, ErrorMode::kL0);
  if (id == "phi1-distance") return check_phi_distance(inst, ErrorMode::kL1);
  if (id == "steiner-size") return check_steiner_size(inst, trace);
  if (id == "transition-cost") return check_transition_cost(inst, trace);
  if (id == "tour-cost") return check_tour_cost(inst, trace);
  if (id == "steiner-length") return check_steiner_length(trace);
  if (id == "net-ball") return check_net_balls(inst, trace, ErrorMode::kL0);
  if (id == "net-ball-weighted") return check_net_balls(inst, trace, ErrorMode::kL1);
  if (id == "search-order") return check_search_order(inst, trace);
  throw UnknownLemmaId("unknown checker '" + id + "'");
}

}  // namespace predsearch
