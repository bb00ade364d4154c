#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "predsearch/instances.hpp"
#include "predsearch/oracle.hpp"
#include "predsearch/planner.hpp"
#include "predsearch/runner.hpp"
#include "test_util.hpp"

namespace predsearch {
namespace {

using testing::floyd;
using testing::make_instance;
using testing::path_instance;
using testing::random_graph;

std::vector<std::int64_t> brute_phi(const Instance& inst, ErrorMode mode) {
  const auto d = floyd(inst.graph);
  std::vector<std::int64_t> phi(static_cast<std::size_t>(inst.graph.size()), 0);
  for (Vertex v = 0; v < inst.graph.size(); ++v)
    for (Vertex u = 0; u < inst.graph.size(); ++u) {
      const std::int64_t gap = inst.predictions[u] - d[u][v];
      phi[v] += mode == ErrorMode::kL0 ? (gap != 0) : std::abs(gap);
    }
  return phi;
}

TEST(ImpliedError, PathExample) {
  const Instance inst = path_instance(3, 2);  // f = (2, 1, 0)
  EXPECT_EQ(implied_error(inst, ErrorMode::kL0), (std::vector<std::int64_t>{2, 3, 0}));
}

TEST(ImpliedError, MatchesDoubleLoop) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst;
    inst.graph = random_graph(2 + static_cast<Vertex>(seed % 30), static_cast<int>(seed % 6), 1 + static_cast<Length>(seed % 4), seed);
    inst.goal = 0;
    SplitMix64 rng(seed);
    for (Vertex v = 0; v < inst.graph.size(); ++v) inst.predictions.push_back(rng.between(0, 20));
    const DistanceMatrix dist = all_pairs_distances(inst.graph);
    for (ErrorMode mode : {ErrorMode::kL0, ErrorMode::kL1}) {
      const auto want = brute_phi(inst, mode);
      EXPECT_EQ(implied_error(inst, mode, dist), want);
      EXPECT_EQ(implied_error_serial(inst, mode, dist), want);
    }
  }
}

TEST(ImpliedError, GoalValueIsErrorCount) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = corrupt_predictions(gen_random_tree(60, 4, seed), static_cast<Vertex>(seed % 30), 0, 60, seed);
    const auto phi = implied_error(inst, ErrorMode::kL0);
    EXPECT_EQ(phi[inst.goal], static_cast<std::int64_t>(erroneous_set(inst).size()));
    for (std::int64_t p : phi) {
      EXPECT_GE(p, 0);
      EXPECT_LE(p, 60);
    }
  }
}

TEST(ImpliedError, PerfectPredictionsHaveUniqueZero) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_tree(50, 3, seed);
    const auto phi = implied_error(inst, ErrorMode::kL0);
    for (Vertex v = 0; v < 50; ++v) EXPECT_EQ(phi[v] == 0, v == inst.goal);
  }
}

TEST(Steiner, PathBetweenLeaves) {
  const Instance inst = path_instance(6, 5);
  const DistanceMatrix dist = all_pairs_distances(inst.graph);
  const std::vector<Vertex> terminals = {0, 5};
  const SteinerTree t = steiner_tree(inst.graph, terminals, dist);
  EXPECT_EQ(t.vertices, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t.length, 5);
  EXPECT_EQ(t.edges.size(), 5u);
}

TEST(Steiner, Singleton) {
  const Instance grid = gen_grid(4, 4, 1, 0, 1);
  const DistanceMatrix dist = all_pairs_distances(grid.graph);
  const std::vector<Vertex> one = {6};
  const SteinerTree t = steiner_tree(grid.graph, one, dist);
  EXPECT_EQ(t.vertices, std::vector<Vertex>{6});
  EXPECT_EQ(t.length, 0);
  EXPECT_TRUE(t.edges.empty());
}

// Exact Steiner weight by enumerating vertex supersets of the terminals and
// taking the spanning tree of each connected induced subgraph.
Length brute_steiner(const Graph& g, const std::vector<Vertex>& terminals) {
  const Vertex n = g.size();
  std::uint32_t must = 0;
  for (Vertex t : terminals) must |= 1u << t;
  Length best = kInfiniteLength;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & must) != must) continue;
    std::vector<EdgeSpec> inside;
    for (const EdgeSpec& e : g.edges())
      if ((mask >> e.u & 1) && (mask >> e.v & 1)) inside.push_back(e);
    std::sort(inside.begin(), inside.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.length < b.length; });
    std::vector<Vertex> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    Length weight = 0;
    int joins = 0;
    for (const EdgeSpec& e : inside) {
      const Vertex a = find(e.u), b = find(e.v);
      if (a == b) continue;
      parent[a] = b;
      weight += e.length;
      ++joins;
    }
    if (joins + 1 == __builtin_popcount(mask)) best = std::min(best, weight);
  }
  return best;
}

bool spans(const SteinerTree& t, const std::vector<Vertex>& terminals) {
  if (t.edges.size() + 1 != t.vertices.size()) return false;
  for (Vertex v : terminals)
    if (!std::binary_search(t.vertices.begin(), t.vertices.end(), v)) return false;
  std::map<Vertex, Vertex> parent;
  for (Vertex v : t.vertices) parent[v] = v;
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const EdgeSpec& e : t.edges) {
    const Vertex a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

TEST(Steiner, AgainstBruteForceOnSmallGraphs) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Vertex n = 3 + static_cast<Vertex>(seed % 10);
    const bool tree = seed % 3 == 0;
    const Graph g = random_graph(n, tree ? 0 : 1 + static_cast<int>(seed % 5), 1 + static_cast<Length>(seed % 3), seed);
    SplitMix64 rng(seed + 1);
    std::vector<Vertex> terminals;
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(3) == 0) terminals.push_back(v);
    if (terminals.empty()) terminals.push_back(0);
    const DistanceMatrix dist = all_pairs_distances(g);
    const SteinerTree t = steiner_tree(g, terminals, dist);
    ASSERT_TRUE(spans(t, terminals)) << "seed " << seed;
    Length length = 0;
    for (const EdgeSpec& e : t.edges) length += e.length;
    ASSERT_EQ(length, t.length);
    const Length optimum = brute_steiner(g, terminals);
    ASSERT_LE(t.length, 2 * optimum) << "seed " << seed;
    if (g.is_tree()) {
      ASSERT_EQ(t.length, optimum) << "seed " << seed;
    }
  }
}

TEST(Steiner, GridCorners) {
  const Instance grid = gen_grid(3, 4, 1, 0, 1);  // 12 vertices
  const DistanceMatrix dist = all_pairs_distances(grid.graph);
  const std::vector<Vertex> corners = {0, 2, 11};
  const SteinerTree t = steiner_tree(grid.graph, corners, dist);
  EXPECT_TRUE(spans(t, corners));
  EXPECT_LE(t.length, 2 * brute_steiner(grid.graph, corners));
}

TEST(EulerTour, ClosedWalkTwiceOverEveryEdge) {
  const Instance inst = gen_random_tree(40, 4, 3);
  const DistanceMatrix dist = all_pairs_distances(inst.graph);
  const std::vector<Vertex> terminals = {3, 17, 25, 39};
  const SteinerTree t = steiner_tree(inst.graph, terminals, dist);
  const auto tour = euler_tour(t, terminals.front());
  ASSERT_EQ(tour.front(), 3);
  ASSERT_EQ(tour.back(), 3);
  ASSERT_EQ(tour.size(), 2 * t.edges.size() + 1);
  std::map<std::pair<Vertex, Vertex>, int> uses;
  for (std::size_t i = 1; i < tour.size(); ++i)
    ++uses[{std::min(tour[i - 1], tour[i]), std::max(tour[i - 1], tour[i])}];
  for (const EdgeSpec& e : t.edges) EXPECT_EQ((uses[{e.u, e.v}]), 2);
}

TEST(FullInfo, PerfectPredictionsGoStraightToGoal) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = gen_random_tree(1 + static_cast<Vertex>(seed % 150), 2 + static_cast<int>(seed % 4), seed);
    const PlanResult plan = run_fullinfo(inst, ErrorMode::kL0);
    ASSERT_TRUE(plan.ledger.goal_found());
    ASSERT_EQ(plan.ledger.total(), optimal_cost(inst));
    if (inst.goal == inst.graph.root()) continue;
    ASSERT_FALSE(plan.rounds.empty());
    ASSERT_EQ(plan.rounds.front().members, std::vector<Vertex>{inst.goal});
    ASSERT_LE(plan.ledger.moves().size(), 1u);
  }
}

TEST(FullInfo, CheckersHoldOnTreesAndGrids) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Instance inst = seed % 2 == 0
                        ? corrupt_predictions(gen_random_tree(80, 3, seed), static_cast<Vertex>(seed % 25), 0, 80, seed)
                        : gen_grid(6 + static_cast<int>(seed % 5), 6, seed % 4 == 1 ? 4 : 1, static_cast<Vertex>(seed % 15), seed);
    for (Algorithm a : {Algorithm::kFullInfoL0, Algorithm::kFullInfoL1}) {
      if (a == Algorithm::kFullInfoL0 && !inst.graph.unit_lengths()) continue;
      const RunOutput out = run_algorithm(inst, a);
      ASSERT_TRUE(out.found);
      for (const auto& id : applicable_lemmas(to_string(a))) {
        const CheckResult r = check_lemma(inst, out.trace, id);
        ASSERT_TRUE(r.pass || !r.applicable) << "seed " << seed << " " << id << ": " << r.witness;
      }
    }
  }
}

TEST(FullInfo, L0NeedsUnitLengths) {
  const Instance weighted = gen_grid(4, 4, 5, 2, 3);
  EXPECT_THROW(run_fullinfo(weighted, ErrorMode::kL0), GraphError);
  EXPECT_NO_THROW(run_fullinfo(weighted, ErrorMode::kL1));
}

TEST(FullInfo, GoalFreeRunCoversEverything) {
  Instance inst = gen_random_tree(40, 3, 5);
  inst.goal = kHiddenGoal;
  const PlanResult plan = run_fullinfo(inst, ErrorMode::kL0);
  EXPECT_EQ(plan.visit_order.size(), 40u);
}

TEST(FullInfo, PlanJsonRoundTrip) {
  const Instance inst = corrupt_predictions(gen_random_tree(60, 3, 8), 12, 0, 60, 8);
  const PlanResult plan = run_fullinfo(inst, ErrorMode::kL0);
  std::stringstream buffer;
  write_plan_json(buffer, plan);
  const PlanResult back = read_plan_json(buffer);
  EXPECT_EQ(back.mode, plan.mode);
  ASSERT_EQ(back.rounds.size(), plan.rounds.size());
  for (std::size_t i = 0; i < back.rounds.size(); ++i) {
    EXPECT_EQ(back.rounds[i].members, plan.rounds[i].members);
    EXPECT_EQ(back.rounds[i].tour, plan.rounds[i].tour);
    EXPECT_EQ(back.rounds[i].anchor, plan.rounds[i].anchor);
    EXPECT_EQ(back.rounds[i].steiner.length, plan.rounds[i].steiner.length);
    EXPECT_EQ(back.rounds[i].transition_cost, plan.rounds[i].transition_cost);
  }
}

}  // namespace
}  // namespace predsearch
