#include <gtest/gtest.h>

#include <sstream>

#include "predsearch/env.hpp"
#include "predsearch/instances.hpp"
#include "predsearch/runner.hpp"
#include "test_util.hpp"

namespace predsearch {
namespace {

using testing::binary_instance;
using testing::path_instance;

TEST(View, StartsAtRootWithChildrenObserved) {
  Environment env(binary_instance(7, 6));
  ExplorationView& view = env.view();
  EXPECT_EQ(view.position(), 0);
  EXPECT_EQ(view.visit_order(), std::vector<Vertex>{0});
  EXPECT_TRUE(view.is_visited(0));
  EXPECT_TRUE(view.is_frontier(1));
  EXPECT_TRUE(view.is_frontier(2));
  EXPECT_FALSE(view.is_observed(3));
  EXPECT_EQ(view.frontier_count(), 2u);
  EXPECT_EQ(view.prediction(1), 3);
}

TEST(View, StepToChildCostsOneAndRevealsGrandchildren) {
  Environment env(binary_instance(7, 6));
  ExplorationView& view = env.view();
  EXPECT_FALSE(view.move_to(1));
  EXPECT_EQ(view.ledger().total(), 1);
  EXPECT_TRUE(view.is_frontier(3));
  EXPECT_TRUE(view.is_frontier(4));
  EXPECT_EQ(view.frontier_count(), 3u);
  EXPECT_EQ(view.neighbors(1).size(), 3u);
}

TEST(View, JumpChargesTreeDistance) {
  Environment env(binary_instance(15, 14));
  ExplorationView& view = env.view();
  view.move_to(1);
  view.move_to(3);
  view.move_to(7);
  view.move_to(2);  // 7 -> 3 -> 1 -> 0 -> 2
  EXPECT_EQ(view.ledger().moves().back().step_cost, 4);
  EXPECT_EQ(view.ledger().total(), 7);
}

TEST(View, GoalFreezesLedger) {
  Environment env(path_instance(3, 2));
  ExplorationView& view = env.view();
  EXPECT_FALSE(view.move_to(1));
  EXPECT_TRUE(view.move_to(2));
  EXPECT_TRUE(view.goal_found());
  EXPECT_EQ(view.ledger().goal_time(), 2);
  EXPECT_THROW(view.move_to(1), ContractViolation);
  EXPECT_EQ(view.ledger().total(), 2);
}

TEST(View, GoalAtStart) {
  Environment env(path_instance(3, 0));
  EXPECT_TRUE(env.view().goal_found());
  EXPECT_EQ(env.view().ledger().goal_time(), 0);
}

TEST(View, RejectsIllegalObservation) {
  Environment env(binary_instance(15, 14));
  ExplorationView& view = env.view();
  EXPECT_THROW(view.move_to(7), TargetNotObserved);
  EXPECT_THROW(view.prediction(7), ContractViolation);
  EXPECT_THROW(view.neighbors(1), ContractViolation);
  EXPECT_THROW(view.move_to(0), ContractViolation);
  EXPECT_THROW(view.move_to(99), TargetNotObserved);
}

TEST(View, FrontierInvariantsOnRandomWalks) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = gen_random_tree(60, 4, seed);
    auto shared = std::make_shared<const Instance>(inst);
    Environment env(shared);
    ExplorationView& view = env.view();
    SplitMix64 rng(seed);
    std::size_t fresh = 1;
    while (!view.goal_found() && view.visited_count() < 60) {
      std::vector<Vertex> frontier;
      for (Vertex v = 0; v < 60; ++v)
        if (view.is_frontier(v)) frontier.push_back(v);
      ASSERT_EQ(frontier.size(), view.frontier_count());
      for (Vertex v : frontier) {
        bool has_visited_neighbor = false;
        for (const Arc& a : inst.graph.neighbors(v)) has_visited_neighbor |= view.is_visited(a.to);
        ASSERT_TRUE(has_visited_neighbor);
      }
      const Vertex next = frontier[rng.below(frontier.size())];
      view.move_to(next);
      ++fresh;
      ASSERT_EQ(view.visited_count(), fresh);
    }
    // Ledger against an independent recomputation.
    const auto d = testing::floyd(inst.graph);
    Length total = 0;
    for (const MoveRecord& m : view.ledger().moves()) {
      total += d[m.from][m.to];
      ASSERT_EQ(m.step_cost, d[m.from][m.to]);
      ASSERT_EQ(m.cumulative_cost, total);
    }
    EXPECT_EQ(view.ledger().total(), total);
  }
}

TEST(ExtraExploration, StraightWalkIsZero) {
  Environment env(path_instance(5, 4));
  for (Vertex v = 1; v < 5; ++v) env.view().move_to(v);
  EXPECT_EQ(extra_exploration(env.view(), env.instance()), 0);
}

TEST(ExtraExploration, OneSiblingIsOne) {
  Environment env(binary_instance(3, 2));
  env.view().move_to(1);
  env.view().move_to(2);
  EXPECT_EQ(extra_exploration(env.view(), env.instance()), 1);
}

TEST(ExtraExploration, ZeroErrorKnownDistStaysOnPath) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_tree(80, 2 + static_cast<int>(seed % 5), seed);
    const RunOutput out = run_algorithm(inst, Algorithm::kKnownDist);
    const TreeView tree(inst.graph, 0);
    for (Vertex v : out.visit_order) ASSERT_TRUE(tree.is_ancestor(v, inst.goal)) << "seed " << seed;
    EXPECT_EQ(out.extra_exploration, 0);
  }
}

TEST(TraceCsv, RoundTrip) {
  const Instance inst = corrupt_predictions(gen_random_tree(50, 3, 4), 5, 0, 50, 9);
  const RunOutput out = run_algorithm(inst, Algorithm::kTreeX);
  std::stringstream buffer;
  write_trace_csv(buffer, out.trace.moves);
  EXPECT_EQ(buffer.str().rfind("t,from,to,step_cost,cumulative_cost,visited,goal_found\n", 0), 0u);
  const auto back = read_trace_csv(buffer);
  ASSERT_EQ(back.size(), out.trace.moves.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].to, out.trace.moves[i].to);
    EXPECT_EQ(back[i].cumulative_cost, out.trace.moves[i].cumulative_cost);
    EXPECT_EQ(back[i].goal_found, out.trace.moves[i].goal_found);
  }
}

}  // namespace
}  // namespace predsearch
