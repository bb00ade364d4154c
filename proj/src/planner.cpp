#include "predsearch/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace predsearch {

const char* to_string(ErrorMode mode) { return mode == ErrorMode::kL0 ? "l0" : "l1"; }

namespace {

std::int64_t implied_error_at(const Instance& inst, ErrorMode mode, const DistanceMatrix& dist,
                              Vertex v) {
  const auto row = dist.row(v);
  std::int64_t sum = 0;
  for (Vertex u = 0; u < dist.size(); ++u) {
    const std::int64_t gap = inst.predictions[u] - row[u];
    if (mode == ErrorMode::kL0)
      sum += gap != 0 ? 1 : 0;
    else
      sum += gap < 0 ? -gap : gap;
  }
  return sum;
}

}  // namespace

std::vector<std::int64_t> implied_error(const Instance& inst, ErrorMode mode,
                                        const DistanceMatrix& dist) {
  const Vertex n = dist.size();
  std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static)
  for (Vertex v = 0; v < n; ++v) out[v] = implied_error_at(inst, mode, dist, v);
  return out;
}

std::vector<std::int64_t> implied_error_serial(const Instance& inst, ErrorMode mode,
                                               const DistanceMatrix& dist) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(dist.size()), 0);
  for (Vertex v = 0; v < dist.size(); ++v) out[v] = implied_error_at(inst, mode, dist, v);
  return out;
}

std::vector<std::int64_t> implied_error(const Instance& inst, ErrorMode mode) {
  return implied_error(inst, mode, all_pairs_distances(inst.graph));
}

namespace {

Length edge_length(const Graph& graph, Vertex u, Vertex v) {
  for (const Arc& a : graph.neighbors(u))
    if (a.to == v) return a.length;
  throw GraphError("no edge between " + std::to_string(u) + " and " + std::to_string(v));
}

SteinerTree finish(std::vector<EdgeSpec> edges) {
  SteinerTree out;
  for (EdgeSpec& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    out.length += e.length;
    out.vertices.push_back(e.u);
    out.vertices.push_back(e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  out.edges = std::move(edges);
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  return out;
}

SteinerTree steiner_on_tree(const Graph& graph, std::span<const Vertex> terminals) {
  const TreeView tree(graph, terminals.front());
  std::vector<char> needed(static_cast<std::size_t>(graph.size()), 0);
  for (Vertex t : terminals) needed[t] = 1;
  const auto& order = tree.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex p = tree.parent(*it);
    if (needed[*it] && p != kNoVertex) needed[p] = 1;
  }
  std::vector<EdgeSpec> edges;
  for (Vertex v : order) {
    const Vertex p = tree.parent(v);
    if (needed[v] && p != kNoVertex) edges.push_back({p, v, tree.depth(v) - tree.depth(p)});
  }
  return finish(std::move(edges));
}

// One shortest path u -> v, ties broken towards the smallest predecessor id.
std::vector<Vertex> shortest_path(const Graph& graph, const DistanceMatrix& dist, Vertex u,
                                  Vertex v) {
  std::vector<Vertex> back{v};
  Vertex x = v;
  while (x != u) {
    Vertex pred = kNoVertex;
    for (const Arc& a : graph.neighbors(x)) {
      if (dist(u, a.to) + a.length == dist(u, x) && (pred == kNoVertex || a.to < pred)) pred = a.to;
    }
    x = pred;
    back.push_back(x);
  }
  std::reverse(back.begin(), back.end());
  return back;
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

SteinerTree steiner_on_graph(const Graph& graph, std::span<const Vertex> terminals,
                             const DistanceMatrix& dist) {
  // Prim over the metric closure of the terminals.
  const std::size_t k = terminals.size();
  std::vector<char> in_tree(k, 0);
  std::vector<Length> best(k, kInfiniteLength);
  std::vector<std::size_t> link(k, 0);
  best[0] = 0;
  std::vector<std::pair<Vertex, Vertex>> closure_edges;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!in_tree[i] && (pick == k || best[i] < best[pick])) pick = i;
    in_tree[pick] = 1;
    if (round > 0) closure_edges.push_back({terminals[link[pick]], terminals[pick]});
    for (std::size_t i = 0; i < k; ++i) {
      const Length d = dist(terminals[pick], terminals[i]);
      if (!in_tree[i] && d < best[i]) {
        best[i] = d;
        link[i] = pick;
      }
    }
  }

  // Realise closure edges as paths, then take a spanning tree of the union.
  std::vector<EdgeSpec> union_edges;
  for (auto [u, v] : closure_edges) {
    const auto path = shortest_path(graph, dist, u, v);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Vertex a = std::min(path[i], path[i + 1]);
      Vertex b = std::max(path[i], path[i + 1]);
      union_edges.push_back({a, b, edge_length(graph, a, b)});
    }
  }
  std::sort(union_edges.begin(), union_edges.end(), [](const EdgeSpec& x, const EdgeSpec& y) {
    return std::tie(x.length, x.u, x.v) < std::tie(y.length, y.u, y.v);
  });
  union_edges.erase(std::unique(union_edges.begin(), union_edges.end(),
                                [](const EdgeSpec& x, const EdgeSpec& y) {
                                  return x.u == y.u && x.v == y.v;
                                }),
                    union_edges.end());
  DisjointSets sets(static_cast<std::size_t>(graph.size()));
  std::vector<EdgeSpec> tree_edges;
  for (const EdgeSpec& e : union_edges)
    if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) tree_edges.push_back(e);

  // Prune non-terminal leaves.
  std::vector<char> terminal(static_cast<std::size_t>(graph.size()), 0);
  for (Vertex t : terminals) terminal[t] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(static_cast<std::size_t>(graph.size()), 0);
    for (const EdgeSpec& e : tree_edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    const auto before = tree_edges.size();
    std::erase_if(tree_edges, [&](const EdgeSpec& e) {
      return (degree[e.u] == 1 && !terminal[e.u]) || (degree[e.v] == 1 && !terminal[e.v]);
    });
    changed = tree_edges.size() != before;
  }
  return finish(std::move(tree_edges));
}

}  // namespace

SteinerTree steiner_tree(const Graph& graph, std::span<const Vertex> terminals,
                         const DistanceMatrix& dist) {
  if (terminals.empty()) throw std::invalid_argument("steiner tree of an empty set");
  std::vector<Vertex> sorted(terminals.begin(), terminals.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() == 1) {
    SteinerTree single;
    single.vertices = sorted;
    return single;
  }
  return graph.is_tree() ? steiner_on_tree(graph, sorted) : steiner_on_graph(graph, sorted, dist);
}

std::vector<Vertex> euler_tour(const SteinerTree& tree, Vertex start) {
  std::vector<std::vector<Vertex>> adj;
  auto slot = [&](Vertex v) -> std::vector<Vertex>& {
    if (static_cast<std::size_t>(v) >= adj.size()) adj.resize(static_cast<std::size_t>(v) + 1);
    return adj[v];
  };
  slot(start);
  for (const EdgeSpec& e : tree.edges) {
    slot(e.u).push_back(e.v);
    slot(e.v).push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<Vertex> tour{start};
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{start, kNoVertex, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < adj[top.v].size()) {
      const Vertex c = adj[top.v][top.next++];
      if (c == top.parent) continue;
      tour.push_back(c);
      stack.push_back({c, top.v, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) tour.push_back(stack.back().v);
    }
  }
  return tour;
}

PlanResult run_fullinfo(const Instance& inst, ErrorMode mode) {
  return run_fullinfo(inst, mode, all_pairs_distances(inst.graph));
}

PlanResult run_fullinfo(const Instance& inst, ErrorMode mode, const DistanceMatrix& dist) {
  inst.validate();
  if (mode == ErrorMode::kL0 && !inst.graph.unit_lengths())
    throw GraphError("l0 planning requires unit edge lengths");

  const Graph& graph = inst.graph;
  const auto phi = implied_error(inst, mode, dist);

  PlanResult result;
  result.mode = mode;
  std::vector<char> visited(static_cast<std::size_t>(graph.size()), 0);
  std::vector<char> covered(static_cast<std::size_t>(graph.size()), 0);
  Vertex position = graph.root();
  visited[position] = 1;
  result.visit_order.push_back(position);
  if (position == inst.goal) {
    result.ledger.mark_goal_at_start();
    return result;
  }

  auto move = [&](Vertex to, Length cost) {
    if (!visited[to]) {
      visited[to] = 1;
      result.visit_order.push_back(to);
    }
    const bool reached = to == inst.goal;
    result.ledger.charge(position, to, cost, static_cast<std::int64_t>(result.visit_order.size()),
                         reached);
    position = to;
    return reached;
  };

  std::size_t covered_count = 0;
  for (std::int64_t rho = 0; rho < 62; ++rho) {
    if (covered_count == static_cast<std::size_t>(graph.size())) return result;  // goal-free clone
    PlanRound round;
    round.rho = rho;
    round.threshold = std::int64_t{1} << rho;
    for (Vertex v = 0; v < graph.size(); ++v) {
      if (!covered[v] && phi[v] < round.threshold) {
        covered[v] = 1;
        ++covered_count;
        round.members.push_back(v);
      }
    }
    if (round.members.empty()) {
      round.anchor = position;
      result.rounds.push_back(std::move(round));
      continue;
    }
    round.steiner = steiner_tree(graph, round.members, dist);

    Vertex anchor = round.members.front();
    for (Vertex v : round.members)
      if (dist(position, v) < dist(position, anchor)) anchor = v;
    round.anchor = anchor;

    if (anchor != position) {
      round.transition_cost = dist(position, anchor);
      if (move(anchor, round.transition_cost)) {
        round.goal_found = true;
        round.tour.push_back(anchor);
        result.rounds.push_back(std::move(round));
        return result;
      }
    }
    const auto tour = euler_tour(round.steiner, anchor);
    round.tour.push_back(tour.front());
    for (std::size_t i = 1; i < tour.size(); ++i) {
      const Length step = edge_length(graph, tour[i - 1], tour[i]);
      round.tour_cost += step;
      round.tour.push_back(tour[i]);
      if (move(tour[i], step)) {
        round.goal_found = true;
        break;
      }
    }
    const bool done = round.goal_found;
    result.rounds.push_back(std::move(round));
    if (done) return result;
  }
  throw std::logic_error("planner exhausted all thresholds without reaching the goal");
}

void write_plan_json(std::ostream& out, const PlanResult& plan) {
  nlohmann::json doc;
  doc["mode"] = to_string(plan.mode);
  doc["total_cost"] = plan.ledger.total();
  doc["goal_found"] = plan.ledger.goal_found();
  auto& rounds = doc["rounds"] = nlohmann::json::array();
  for (const PlanRound& r : plan.rounds) {
    nlohmann::json j;
    j["rho"] = r.rho;
    j["threshold"] = r.threshold;
    j["size"] = r.members.size();
    j["steiner_length"] = r.steiner.length;
    j["tour"] = r.tour;
    j["transition_cost"] = r.transition_cost;
    j["tour_cost"] = r.tour_cost;
    j["anchor"] = r.anchor;
    j["members"] = r.members;
    j["steiner_vertices"] = r.steiner.vertices;
    auto& edges = j["steiner_edges"] = nlohmann::json::array();
    for (const EdgeSpec& e : r.steiner.edges) edges.push_back({e.u, e.v, e.length});
    j["goal_found"] = r.goal_found;
    rounds.push_back(std::move(j));
  }
  out << doc.dump(1) << '\n';
}

PlanResult read_plan_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  PlanResult plan;
  plan.mode = doc.at("mode").get<std::string>() == "l1" ? ErrorMode::kL1 : ErrorMode::kL0;
  for (const auto& j : doc.at("rounds")) {
    PlanRound r;
    r.rho = j.at("rho").get<std::int64_t>();
    r.threshold = j.at("threshold").get<std::int64_t>();
    r.members = j.at("members").get<std::vector<Vertex>>();
    r.steiner.vertices = j.at("steiner_vertices").get<std::vector<Vertex>>();
    for (const auto& e : j.at("steiner_edges"))
      r.steiner.edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), e.at(2).get<Length>()});
    r.steiner.length = j.at("steiner_length").get<Length>();
    r.anchor = j.at("anchor").get<Vertex>();
    r.tour = j.at("tour").get<std::vector<Vertex>>();
    r.transition_cost = j.at("transition_cost").get<Length>();
    r.tour_cost = j.at("tour_cost").get<Length>();
    r.goal_found = j.at("goal_found").get<bool>();
    plan.rounds.push_back(std::move(r));
  }
  return plan;
}

}  // namespace predsearch
