#include <gtest/gtest.h>

#include <sstream>

#include "predsearch/instances.hpp"
#include "predsearch/known_dist.hpp"
#include "predsearch/oracle.hpp"
#include "predsearch/runner.hpp"
#include "test_util.hpp"

namespace predsearch {
namespace {

using testing::binary_instance;
using testing::make_instance;
using testing::path_instance;

TEST(Anchor, LevelFormula) {
  EXPECT_EQ(anchor_level(3, 5, 6), 2);
  EXPECT_EQ(anchor_level(2, 7, 3), std::nullopt);  // alpha = -1
  EXPECT_EQ(anchor_level(4, 3, 6), std::nullopt);  // alpha = 7/2
  EXPECT_EQ(anchor_level(1, 0, 5), std::nullopt);  // alpha = 3 > level
  EXPECT_EQ(anchor_level(0, 5, 5), 0);
}

TEST(Critical, BothConditions) {
  EXPECT_TRUE(critical_condition(4, 2, 8));
  EXPECT_FALSE(critical_condition(4, 3, 8));
  EXPECT_FALSE(critical_condition(3, 1, 8));
  EXPECT_TRUE(critical_condition(0, 0, 0));
}

TEST(ActiveDegenerate, PathRootIsDegenerate) {
  Environment env(path_instance(4, 3));
  KnownDistExplorer run(env.view(), 3);
  EXPECT_TRUE(run.is_active(0));
  EXPECT_TRUE(run.is_degenerate(0));
  EXPECT_TRUE(run.is_active(1));  // frontier vertex
}

TEST(ActiveDegenerate, FullyVisitedLeafIsInactive) {
  const Instance inst = make_instance(3, {{0, 1, 1}, {0, 2, 1}}, kHiddenGoal);
  Environment env(inst);
  KnownDistExplorer run(env.view(), 1);
  EXPECT_FALSE(run.is_degenerate(0));
  run.step();
  EXPECT_FALSE(run.is_active(1));
  EXPECT_TRUE(run.is_degenerate(0));
  EXPECT_EQ(run.run(), RunOutcome::kTreeExhausted);
  EXPECT_FALSE(run.is_active(0));
}

TEST(KnownDist, PerfectPathCostsExactlyD) {
  Environment env(path_instance(10, 9));
  KnownDistExplorer run(env.view(), 9);
  EXPECT_EQ(run.run(), RunOutcome::kGoalFound);
  EXPECT_EQ(env.view().ledger().total(), 9);
  EXPECT_EQ(extra_exploration(env.view(), env.instance()), 0);
}

TEST(KnownDist, PerfectTreesCostExactlyD) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Instance inst = gen_random_tree(1 + static_cast<Vertex>(seed % 250), 2 + static_cast<int>(seed % 5), seed);
    const RunOutput out = run_algorithm(inst, Algorithm::kKnownDist);
    ASSERT_TRUE(out.found);
    ASSERT_EQ(out.cost, optimal_cost(inst)) << "seed " << seed;
    ASSERT_EQ(out.extra_exploration, 0);
  }
}

TEST(KnownDist, LopsidedWithinHeadlineBound) {
  for (std::int64_t depth = 1; depth <= 12; ++depth) {
    const Instance inst = gen_lopsided(depth);
    const RunOutput out = run_algorithm(inst, Algorithm::kKnownDist);
    ASSERT_TRUE(out.found);
    const std::int64_t delta = inst.graph.max_degree();
    EXPECT_LE(out.cost, depth + 86 * delta * depth) << depth;
  }
}

TEST(KnownDist, BudgetCountsVisitedVertices) {
  const Instance inst = gen_lopsided(6);
  Environment env(inst);
  KnownDistExplorer run(env.view(), 6, 5);
  EXPECT_EQ(run.run(), RunOutcome::kBudgetExhausted);
  EXPECT_EQ(run.visited_count(), 5u);
  EXPECT_EQ(env.view().visited_count(), 5u);
}

TEST(KnownDist, GoalFreeRunExhaustsTree) {
  const Instance inst = make_instance(7, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {1, 4, 1}, {2, 5, 1}, {2, 6, 1}},
                                      kHiddenGoal);
  Environment env(inst);
  KnownDistExplorer run(env.view(), 2);
  EXPECT_EQ(run.run(), RunOutcome::kTreeExhausted);
  EXPECT_EQ(run.visited_count(), 7u);
}

TEST(KnownDist, CycleIsRejected) {
  const Instance grid = gen_grid(3, 3, 1, 0, 1);
  Environment env(grid);
  KnownDistExplorer run(env.view(), 4);
  EXPECT_THROW(run.run(), NotATree);
}

TEST(KnownDist, StepRecordDump) {
  StepRecord rec;
  rec.t = 3;
  rec.position = 5;
  rec.anchor = 1;
  rec.callback = true;
  rec.chosen_child = 0;
  rec.next = 7;
  std::ostringstream out;
  write_step_record(out, rec);
  EXPECT_NE(out.str().find('5'), std::string::npos);
  EXPECT_NE(out.str().find('7'), std::string::npos);
}

// Recounts anchors, loads, subtree sizes and memory pointers from scratch at
// every step and compares them with the explorer's incremental tables.
void check_tables(const Instance& inst, const KnownDistExplorer& run) {
  const TreeView tree(inst.graph, run.root());
  const auto& order = run.visit_order();
  std::vector<std::size_t> when(static_cast<std::size_t>(inst.graph.size()), 0);
  for (std::size_t i = 0; i < order.size(); ++i) when[order[i]] = i + 1;
  for (Vertex v : order) {
    // Anchor straight from the formula.
    Vertex want_anchor = kNoVertex;
    if (auto alpha = anchor_level(tree.level(v), inst.predictions[v], run.distance()))
      want_anchor = tree.ancestor_at_level(v, *alpha);
    ASSERT_EQ(run.anchor(v), want_anchor) << "anchor of " << v;

    const auto kids = run.children(v);
    std::int64_t total = 0;
    for (int i = 0; i < static_cast<int>(kids.size()); ++i) {
      std::int64_t load = 0;
      std::int64_t seen = 0;
      for (Vertex x : order) {
        if (!tree.is_ancestor(kids[i], x)) continue;
        ++seen;
        if (run.anchor(x) == v) ++load;
      }
      ASSERT_EQ(run.load(v, i), load) << "load of " << v << " child " << i;
      ASSERT_EQ(run.child_visited(v, i), seen);
      total += load;
    }
    ASSERT_EQ(run.total_load(v), total);

    // Memory: the most recent first visit inside T_v.
    Vertex latest = v;
    for (Vertex x : order)
      if (tree.is_ancestor(v, x) && when[x] > when[latest]) latest = x;
    ASSERT_EQ(run.memory(v), latest) << "memory of " << v;

    bool frontier_below = false;
    for (Vertex x : tree.order())
      if (tree.is_ancestor(v, x) && !run.is_visited(x)) frontier_below = true;
    ASSERT_EQ(run.is_active(v), frontier_below);
  }
}

TEST(KnownDist, IncrementalTablesMatchRecount) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance inst = gen_random_tree(30 + static_cast<Vertex>(seed % 40), 2 + static_cast<int>(seed % 4), seed);
    inst = corrupt_predictions(inst, static_cast<Vertex>(seed % 12), 0, 40, seed + 100);
    Environment env(inst);
    const std::int64_t d = optimal_cost(inst) + static_cast<std::int64_t>(seed % 3) - 1;
    KnownDistExplorer run(env.view(), std::max<std::int64_t>(d, 0));
    run.run([&](const KnownDistExplorer& state, const StepRecord&) { check_tables(inst, state); });
    check_tables(inst, run);
  }
}

TEST(KnownDist, CallbackPicksMinimumActiveLoad) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = corrupt_predictions(gen_random_tree(80, 4, seed), 15, 0, 80, seed);
    Environment env(inst);
    KnownDistExplorer run(env.view(), optimal_cost(inst));
    run.run([&](const KnownDistExplorer& state, const StepRecord& rec) {
      if (!rec.callback) return;
      const auto kids = state.children(rec.anchor);
      std::int64_t best = -1;
      for (int i = 0; i < static_cast<int>(kids.size()); ++i)
        if (state.is_active(kids[i]) && (best < 0 || state.load(rec.anchor, i) < best)) best = state.load(rec.anchor, i);
      ASSERT_EQ(state.load(rec.anchor, rec.chosen_child), best);
      for (int i = 0; i < rec.chosen_child; ++i)
        if (state.is_active(kids[i])) {
          ASSERT_GT(state.load(rec.anchor, i), best);
        }
    });
  }
}

TEST(KnownDist, ProofCheckersHoldOnCorruptedTrees) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Vertex n = 20 + static_cast<Vertex>(seed % 200);
    Instance inst = gen_random_tree(n, 2 + static_cast<int>(seed % 5), seed);
    inst = corrupt_predictions(inst, 1 + static_cast<Vertex>(seed % static_cast<std::uint64_t>(n / 4)), 0, n, seed * 3);
    const RunOutput out = run_algorithm(inst, Algorithm::kKnownDist);
    ASSERT_TRUE(out.found);
    for (const auto& id : applicable_lemmas("known-dist")) {
      const CheckResult r = check_lemma(inst, out.trace, id);
      ASSERT_TRUE(r.pass) << "seed " << seed << " " << id << ": " << r.witness;
    }
    const auto errors = static_cast<std::int64_t>(erroneous_set(inst).size());
    EXPECT_LE(out.cost, optimal_cost(inst) + 86 * inst.graph.max_degree() * errors);
  }
}

}  // namespace
}  // namespace predsearch
