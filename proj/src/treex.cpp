#include "predsearch/treex.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace predsearch {

namespace {

constexpr std::int64_t kSaturated = kUnboundedBudget / 4;

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

}  // namespace

int Subtree::max_degree() const {
  int best = 0;
  for (Vertex v : members) best = std::max(best, static_cast<int>(adjacency[v].size()));
  return best;
}

Subtree subtree_of_visited(const ExplorationView& view) {
  Subtree out;
  out.adjacency.assign(static_cast<std::size_t>(view.id_bound()), {});
  out.members = view.visit_order();
  std::sort(out.members.begin(), out.members.end());
  for (Vertex v : out.members)
    for (const Arc& a : view.neighbors(v))
      if (view.is_visited(a.to)) out.adjacency[v].push_back(a);
  return out;
}

Subtree subtree_of(const TreeView& tree) {
  Subtree out;
  out.adjacency.assign(static_cast<std::size_t>(tree.id_bound()), {});
  out.members = tree.order();
  std::sort(out.members.begin(), out.members.end());
  for (Vertex v : tree.order()) {
    const Vertex p = tree.parent(v);
    if (p == kNoVertex) continue;
    const Length len = tree.depth(v) - tree.depth(p);
    out.adjacency[p].push_back({v, len});
    out.adjacency[v].push_back({p, len});
  }
  for (auto& adj : out.adjacency)
    std::sort(adj.begin(), adj.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
  return out;
}

CentroidSplit centroid_split(const Subtree& tree, int degree_bound) {
  const auto n = static_cast<std::int64_t>(tree.size());
  if (n <= 2 * static_cast<std::int64_t>(degree_bound))
    throw TreeTooSmall("centroid split needs more than 2*Delta vertices");

  const auto ids = tree.adjacency.size();
  std::vector<Vertex> parent(ids, kNoVertex);
  std::vector<std::int64_t> size(ids, 0);
  std::vector<Vertex> order{tree.members.front()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (const Arc& a : tree.adjacency[v]) {
      if (a.to == parent[v] || a.to == order.front()) continue;
      parent[a.to] = v;
      order.push_back(a.to);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size[*it] += 1;
    if (parent[*it] != kNoVertex) size[parent[*it]] += size[*it];
  }

  auto component_size = [&](Vertex v, Vertex neighbour) {
    return neighbour == parent[v] ? n - size[v] : size[neighbour];
  };

  Vertex center = kNoVertex;
  std::int64_t best = n + 1;
  for (Vertex v : tree.members) {
    std::int64_t worst = 0;
    for (const Arc& a : tree.adjacency[v]) worst = std::max(worst, component_size(v, a.to));
    if (worst < best) {
      best = worst;
      center = v;
    }
  }

  std::vector<std::pair<std::int64_t, Vertex>> parts;
  for (const Arc& a : tree.adjacency[center]) parts.push_back({component_size(center, a.to), a.to});
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  CentroidSplit out;
  out.center = center;
  out.a = parts.at(0).second;
  out.size_a = parts.at(0).first;
  out.b = parts.at(1).second;
  out.size_b = parts.at(1).first;
  return out;
}

CentroidSplit centroid_split(const TreeView& tree, int degree_bound) {
  return centroid_split(subtree_of(tree), degree_bound);
}

std::vector<Vertex> component_through(const Subtree& tree, Vertex a, Vertex v) {
  std::vector<Vertex> out{a};
  std::vector<Vertex> from{v};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Vertex x = out[head];
    const Vertex came_from = from[head];
    for (const Arc& arc : tree.adjacency[x]) {
      if (arc.to == came_from) continue;
      out.push_back(arc.to);
      from.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Length> subtree_distances(const Subtree& tree, Vertex source) {
  std::vector<Length> dist(tree.adjacency.size(), kInfiniteLength);
  dist[source] = 0;
  std::vector<Vertex> queue{source};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (const Arc& a : tree.adjacency[x]) {
      if (dist[a.to] != kInfiniteLength) continue;
      dist[a.to] = dist[x] + a.length;
      queue.push_back(a.to);
    }
  }
  return dist;
}

std::int64_t dominating_vote(std::span<const std::int64_t> votes) {
  std::map<std::int64_t, std::size_t> counts;
  for (std::int64_t x : votes) {
    if (2 * ++counts[x] > votes.size()) return x;
  }
  return -1;
}

std::int64_t dominating_vote(std::span<const Vertex> voters, Vertex center,
                             std::span<const Length> distances_from_center,
                             const ExplorationView& view) {
  if (distances_from_center[center] != 0)
    throw std::invalid_argument("distances must be measured from the center");
  std::vector<std::int64_t> votes;
  votes.reserve(voters.size());
  for (Vertex u : voters) votes.push_back(view.prediction(u) - distances_from_center[u]);
  return dominating_vote(votes);
}

std::int64_t round_budget(std::int64_t rho, const TreeXParams& params, int max_degree) {
  std::int64_t b = 2 * static_cast<std::int64_t>(max_degree) + 1;
  for (std::int64_t i = 0; i < rho; ++i) b = sat_mul(b, params.c1 + params.beta);
  return b;
}

TreeXResult run_treex(ExplorationView& view, const TreeXParams& params) {
  if (params.beta < 1) throw std::invalid_argument("beta must be >= 1");
  if (params.c1 < 1) throw std::invalid_argument("c1 must be >= 1");
  const int delta = view.max_degree();

  TreeXResult result;
  Vertex root = view.position();
  std::int64_t estimate = view.prediction(root);
  bool clamped_initial = false;
  if (estimate < 0) {
    estimate = 0;
    clamped_initial = true;
  }

  for (std::int64_t rho = 0;; ++rho) {
    RoundRecord rec;
    rec.rho = rho;
    rec.base_budget = round_budget(rho, params, delta);
    rec.root = root;
    rec.estimate = estimate;
    rec.estimate_clamped = rho == 0 && clamped_initial;
    rec.budget_used = sat_mul(rec.base_budget, params.beta) < estimate
                          ? rec.base_budget
                          : sat_add(estimate, sat_mul(params.c1, rec.base_budget));
    const Length cost_before = view.ledger().total();

    KnownDistExplorer run(view, estimate, rec.budget_used);
    const RunOutcome outcome = run.run();
    rec.visited_in_run = static_cast<std::int64_t>(run.visited_count());

    if (outcome != RunOutcome::kBudgetExhausted) {
      rec.goal_found = outcome == RunOutcome::kGoalFound;
      rec.round_cost = view.ledger().total() - cost_before;
      rec.cumulative_cost = view.ledger().total();
      rec.next_root = root;
      rec.next_estimate = estimate;
      result.rounds.push_back(rec);
      result.outcome = outcome;
      return result;
    }

    const Subtree seen = subtree_of_visited(view);
    Vertex next_root = root;
    std::int64_t next_estimate = estimate;
    if (static_cast<std::int64_t>(seen.size()) > 2 * static_cast<std::int64_t>(delta)) {
      const CentroidSplit split = centroid_split(seen, delta);
      const auto dist = subtree_distances(seen, split.center);
      const auto side_a = component_through(seen, split.a, split.center);
      const auto side_b = component_through(seen, split.b, split.center);
      next_root = split.center;
      next_estimate = std::max(dominating_vote(side_a, split.center, dist, view),
                               dominating_vote(side_b, split.center, dist, view));
      if (next_estimate < 0) {
        next_estimate = 0;
        rec.estimate_clamped = true;
      }
    } else {
      rec.split_skipped = true;
    }
    if (view.position() != next_root) view.move_to(next_root);

    rec.round_cost = view.ledger().total() - cost_before;
    rec.cumulative_cost = view.ledger().total();
    rec.next_root = next_root;
    rec.next_estimate = next_estimate;
    result.rounds.push_back(rec);
    root = next_root;
    estimate = next_estimate;
  }
}

void write_rounds_csv(std::ostream& out, std::span<const RoundRecord> rounds) {
  out << "rho,B_rho,budget_used,r_rho,D_rho,round_cost,cumulative_cost,goal_found\n";
  for (const RoundRecord& r : rounds) {
    out << r.rho << ',' << r.base_budget << ',' << r.budget_used << ',' << r.root << ','
        << r.estimate << ',' << r.round_cost << ',' << r.cumulative_cost << ','
        << (r.goal_found ? 1 : 0) << '\n';
  }
}

std::vector<RoundRecord> read_rounds_csv(std::istream& in) {
  std::vector<RoundRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  if (line.rfind("rho,", 0) != 0) throw std::runtime_error("rounds: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    RoundRecord r;
    int found = 0;
    if (!(row >> r.rho >> r.base_budget >> r.budget_used >> r.root >> r.estimate >> r.round_cost >>
          r.cumulative_cost >> found))
      throw std::runtime_error("rounds: malformed line");
    r.goal_found = found != 0;
    out.push_back(r);
  }
  return out;
}

}  // namespace predsearch
