#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "predsearch/graph.hpp"

namespace predsearch {

class InfeasibleDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RangeTooNarrow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GoalPolicy { kFixed, kRandom, kAdversarial };

const char* to_string(GoalPolicy policy);
GoalPolicy goal_policy_from_string(const std::string& name);

// Runs an explorer on a goal-free copy of an instance and returns its
// first-visit order. Used to place goals adversarially.
using ReplayExplorer = std::function<std::vector<Vertex>(const Instance& goal_free)>;

// Random tree rooted at 0: vertex i attaches to a uniformly drawn earlier
// vertex that still has spare degree. With window > 0 the parent is drawn
// among the last `window` vertices only, which yields deep trees. The goal
// is uniform over all vertices; predictions are perfect.
Instance gen_random_tree(Vertex n, int max_degree, std::uint64_t seed, Vertex window = 0);

// Same instance with the goal moved to `goal` and perfect predictions.
Instance with_goal(const Instance& inst, Vertex goal);

// Root 0 with children a = 1 (complete binary subtree, leaves at level
// `depth`) and b = 2 (path down to the goal at level `depth`). Null
// predictions f(v) = depth + level(v).
Instance gen_lopsided(std::int64_t depth);

// `arms` disjoint paths of `depth` vertices leaving the root; arm i holds
// ids 1 + i*depth ... (i+1)*depth, its leaf last. Null predictions.
Instance gen_spider(int arms, std::int64_t depth, int goal_arm);
Vertex spider_leaf(int arm, std::int64_t depth);
// Goal at the leaf the explorer reaches last on the goal-free spider (or
// the smallest never-reached leaf).
Instance gen_spider_adversarial(int arms, std::int64_t depth, const ReplayExplorer& explorer);

// Leaf the explorer reaches last, or the smallest leaf it never reaches.
Vertex last_reached(std::span<const Vertex> leaves, std::span<const Vertex> visit_order);

// Starting from perfect predictions, k distinct vertices get a wrong value
// drawn uniformly from [lo, hi]. The goal is a candidate only if
// `allow_goal`. Throws RangeTooNarrow when some chosen vertex has no wrong
// value in range.
Instance corrupt_predictions(const Instance& inst, Vertex k, Prediction lo, Prediction hi,
                             std::uint64_t seed, bool allow_goal = true);

// Complete binary tree of height h: edges into leaves have length L, all
// other edges length 0. Internal predictions L, leaf predictions 2L, goal
// at leaf number `goal_leaf` (left to right).
Instance gen_weighted_hardness(int height, Length leaf_length, std::int64_t goal_leaf = 0);

// w x h grid, id = y*w + x, root 0, goal at the far corner. Edge lengths
// are 1, or uniform in [1, max_length] when max_length > 1. Then k
// corrupted predictions drawn from [0, 2 * d(r, g)].
Instance gen_grid(int width, int height, Length max_length, Vertex k, std::uint64_t seed);

struct GeneratorSpec {
  std::string family = "random-tree";  // random-tree | lopsided | spider | weighted-hardness | grid
  Vertex n = 100;
  int delta = 3;
  std::int64_t depth = 5;
  Vertex k = 0;
  std::uint64_t seed = 1;
  GoalPolicy goal = GoalPolicy::kRandom;
  Vertex goal_vertex = kNoVertex;  // kFixed: vertex (trees, grid) or arm (spider)
  Vertex window = 0;
  int width = 10;
  int height = 10;
  Length max_length = 1;
};

// Throws std::invalid_argument on unusable parameters. `explorer` is only
// needed for adversarial spiders.
Instance generate(const GeneratorSpec& spec, const ReplayExplorer& explorer = {});

}  // namespace predsearch
