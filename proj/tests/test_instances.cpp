#include <gtest/gtest.h>

#include <cmath>

#include "predsearch/instances.hpp"
#include "predsearch/oracle.hpp"
#include "predsearch/planner.hpp"
#include "predsearch/runner.hpp"
#include "test_util.hpp"

namespace predsearch {
namespace {

using testing::floyd;

bool same(const Instance& a, const Instance& b) {
  return testing::same_edges(a.graph, b.graph) && a.predictions == b.predictions && a.goal == b.goal &&
         a.graph.root() == b.graph.root();
}

TEST(RandomTree, DeterministicPerSeed) {
  EXPECT_TRUE(same(gen_random_tree(200, 3, 17), gen_random_tree(200, 3, 17)));
  EXPECT_FALSE(same(gen_random_tree(200, 3, 17), gen_random_tree(200, 3, 18)));
  GeneratorSpec spec;
  spec.n = 150;
  spec.k = 20;
  spec.seed = 4;
  EXPECT_TRUE(same(generate(spec), generate(spec)));
}

TEST(RandomTree, StructureRespectsDegreeAndWindow) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Vertex n = 1 + static_cast<Vertex>(seed % 300);
    const int delta = 2 + static_cast<int>(seed % 5);
    const Vertex window = seed % 2 ? 0 : 1 + static_cast<Vertex>(seed % 7);
    const Instance inst = gen_random_tree(n, delta, seed, window);
    ASSERT_EQ(inst.graph.size(), n);
    ASSERT_TRUE(inst.graph.is_tree());
    ASSERT_LE(inst.graph.max_degree(), delta);
    ASSERT_EQ(inst.graph.root(), 0);
    ASSERT_TRUE(erroneous_set(inst).empty());
    ASSERT_GE(inst.goal, 0);
    ASSERT_LT(inst.goal, n);
  }
}

TEST(RandomTree, WindowMakesDeepTrees) {
  const Instance deep = gen_random_tree(500, 3, 2, 2);
  const Instance bushy = gen_random_tree(500, 3, 2);
  const auto depth = [](const Instance& inst) {
    const auto d = all_distances(inst.graph, 0);
    return *std::max_element(d.begin(), d.end());
  };
  EXPECT_GT(depth(deep), 3 * depth(bushy));
}

TEST(RandomTree, SingleVertexAndInfeasibleDegree) {
  const Instance one = gen_random_tree(1, 2, 0);
  EXPECT_EQ(one.goal, 0);
  EXPECT_EQ(one.predictions, std::vector<Prediction>{0});
  EXPECT_THROW(gen_random_tree(5, 1, 0), InfeasibleDegree);
  EXPECT_THROW(gen_random_tree(0, 3, 0), std::invalid_argument);
}

TEST(Lopsided, ShapeAndPredictions) {
  for (std::int64_t depth = 1; depth <= 10; ++depth) {
    const Instance inst = gen_lopsided(depth);
    ASSERT_EQ(inst.graph.size(), (Vertex{1} << depth) + depth);
    ASSERT_EQ(optimal_cost(inst), depth);
    const TreeView tree(inst.graph, 0);
    ASSERT_TRUE(tree.is_ancestor(2, inst.goal));
    for (Vertex v = 0; v < inst.graph.size(); ++v) ASSERT_EQ(inst.predictions[v], depth + tree.level(v));
  }
}

TEST(Spider, ShapeAndErrors) {
  const Instance inst = gen_spider(3, 5, 1);
  EXPECT_EQ(inst.graph.size(), 16);
  EXPECT_EQ(inst.graph.max_degree(), 3);
  EXPECT_EQ(inst.goal, spider_leaf(1, 5));
  EXPECT_EQ(spider_leaf(1, 5), 10);
  EXPECT_EQ(erroneous_set(inst).size(), 5u);
  EXPECT_THROW(gen_spider(1, 5, 0), std::invalid_argument);
  EXPECT_THROW(gen_spider(3, 5, 3), std::invalid_argument);
}

TEST(Spider, LastReachedLeaf) {
  const std::vector<Vertex> leaves = {5, 10, 15};
  const std::vector<Vertex> all = {0, 10, 5, 15};
  EXPECT_EQ(last_reached(leaves, all), 15);
  const std::vector<Vertex> partial = {0, 15};
  EXPECT_EQ(last_reached(leaves, partial), 5);
}

TEST(Spider, AdversarialGoalForcesFloorOnEveryExplorer) {
  for (int arms = 3; arms <= 6; ++arms) {
    for (std::int64_t depth : {3, 8, 15}) {
      for (Algorithm a : all_algorithms()) {
        const Instance inst = gen_spider_adversarial(arms, depth, replay_explorer(a));
        const RunOutput out = run_algorithm(inst, a);
        // A run that never finds the goal is charged at least its full walk.
        ASSERT_GE(out.cost, (arms - 1) * depth) << to_string(a) << " arms " << arms << " depth " << depth;
        if (out.found) {
          for (int arm = 0; arm < arms; ++arm) {
            const Vertex leaf = spider_leaf(arm, depth);
            ASSERT_NE(std::find(out.visit_order.begin(), out.visit_order.end(), leaf), out.visit_order.end())
                << to_string(a) << " skipped leaf " << leaf;
          }
        }
      }
    }
  }
}

TEST(Corrupt, ExactlyKErrors) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance base = gen_random_tree(100, 4, seed);
    const auto k = static_cast<Vertex>(seed % 101);
    const Instance inst = corrupt_predictions(base, k, 0, 100, seed);
    ASSERT_EQ(static_cast<Vertex>(erroneous_set(inst).size()), k);
    for (Prediction f : inst.predictions) {
      ASSERT_GE(f, 0);
      ASSERT_LE(f, 100);
    }
    ASSERT_TRUE(testing::same_edges(inst.graph, base.graph));
  }
}

TEST(Corrupt, ZeroAndAllAndGoalExclusion) {
  const Instance base = gen_random_tree(50, 3, 5);
  EXPECT_EQ(corrupt_predictions(base, 0, 0, 50, 1).predictions, base.predictions);
  EXPECT_EQ(erroneous_set(corrupt_predictions(base, 50, 0, 50, 1)).size(), 50u);
  const Instance kept = corrupt_predictions(base, 49, 0, 50, 1, false);
  EXPECT_EQ(kept.predictions[kept.goal], 0);
  EXPECT_THROW(corrupt_predictions(base, 50, 0, 50, 1, false), std::invalid_argument);
  EXPECT_THROW(corrupt_predictions(base, 51, 0, 50, 1), std::invalid_argument);
}

TEST(Corrupt, RangeTooNarrow) {
  const Instance base = testing::path_instance(4, 0);  // f = (0, 1, 2, 3)
  EXPECT_THROW(corrupt_predictions(base, 4, 2, 2, 3), RangeTooNarrow);
  EXPECT_THROW(corrupt_predictions(base, 1, 5, 4, 3), RangeTooNarrow);
  EXPECT_NO_THROW(corrupt_predictions(base, 4, 2, 3, 3));
}

TEST(WeightedHardness, OnlyTheGoalIsWrong) {
  const Instance inst = gen_weighted_hardness(3, 10, 5);
  EXPECT_EQ(inst.graph.size(), 15);
  EXPECT_EQ(inst.goal, 7 + 5);
  EXPECT_EQ(erroneous_set(inst), std::vector<Vertex>{inst.goal});
  for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(inst.predictions[v], 10);
  const auto phi1 = implied_error(inst, ErrorMode::kL1);
  EXPECT_EQ(phi1[inst.goal], 20);
  for (Vertex leaf = 7; leaf < 15; ++leaf) EXPECT_EQ(phi1[leaf], 20) << leaf;
  EXPECT_EQ(optimal_cost(inst), 10);
}

TEST(Grid, ShapeAndDistances) {
  const Instance small = gen_grid(2, 2, 1, 0, 1);
  EXPECT_EQ(small.graph.size(), 4);
  EXPECT_EQ(small.graph.edges().size(), 4u);
  EXPECT_EQ(small.goal, 3);
  EXPECT_EQ(optimal_cost(small), 2);
  const Instance big = gen_grid(20, 20, 1, 0, 1);
  EXPECT_EQ(optimal_cost(big), 38);
  EXPECT_TRUE(big.graph.unit_lengths());
}

TEST(Grid, WeightedImpliedErrorAtGoalIsTotalDeviation) {
  const Instance inst = gen_grid(10, 10, 6, 5, 9);
  EXPECT_FALSE(inst.graph.unit_lengths());
  const auto d = floyd(inst.graph);
  std::int64_t deviation = 0;
  for (Vertex v = 0; v < 100; ++v) deviation += std::abs(inst.predictions[v] - d[v][inst.goal]);
  EXPECT_EQ(implied_error(inst, ErrorMode::kL1)[inst.goal], deviation);
  EXPECT_EQ(erroneous_set(inst).size(), 5u);
}

TEST(Generate, RejectsBadSpecs) {
  GeneratorSpec spec;
  spec.family = "moebius";
  EXPECT_THROW(generate(spec), std::invalid_argument);
  spec.family = "random-tree";
  spec.goal = GoalPolicy::kAdversarial;
  EXPECT_THROW(generate(spec), std::invalid_argument);
  spec.family = "lopsided";
  spec.goal = GoalPolicy::kRandom;
  spec.k = 3;
  EXPECT_THROW(generate(spec), std::invalid_argument);
  EXPECT_THROW(goal_policy_from_string("sideways"), std::invalid_argument);
}

TEST(Generate, FixedGoals) {
  GeneratorSpec spec;
  spec.n = 80;
  spec.goal = GoalPolicy::kFixed;
  spec.goal_vertex = 33;
  EXPECT_EQ(generate(spec).goal, 33);
  spec.family = "spider";
  spec.delta = 4;
  spec.depth = 6;
  spec.goal_vertex = 2;
  EXPECT_EQ(generate(spec).goal, spider_leaf(2, 6));
  spec.family = "grid";
  spec.k = 4;
  spec.goal_vertex = 12;
  const Instance grid = generate(spec);
  EXPECT_EQ(grid.goal, 12);
  EXPECT_EQ(erroneous_set(grid).size(), 4u);
}

}  // namespace
}  // namespace predsearch
