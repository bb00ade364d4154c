#include "predsearch/instances.hpp"

#include <algorithm>

#include "predsearch/rng.hpp"

namespace predsearch {

const char* to_string(GoalPolicy policy) {
  switch (policy) {
    case GoalPolicy::kFixed: return "fixed";
    case GoalPolicy::kRandom: return "random";
    case GoalPolicy::kAdversarial: return "adversarial";
  }
  return "?";
}

GoalPolicy goal_policy_from_string(const std::string& name) {
  if (name == "fixed") return GoalPolicy::kFixed;
  if (name == "random") return GoalPolicy::kRandom;
  if (name == "adversarial") return GoalPolicy::kAdversarial;
  throw std::invalid_argument("unknown goal policy '" + name + "'");
}

namespace {

Instance make_instance(Vertex n, const std::vector<EdgeSpec>& edges, Vertex goal,
                       LengthPolicy policy = LengthPolicy::kPositive) {
  Instance inst;
  inst.graph = Graph(n, edges, 0, policy);
  inst.goal = goal;
  inst.predictions = perfect_predictions(inst.graph, goal);
  return inst;
}

std::vector<Prediction> null_predictions(const Graph& graph, std::int64_t depth) {
  const auto levels = all_distances(graph, graph.root());
  std::vector<Prediction> f(levels.size());
  for (std::size_t v = 0; v < levels.size(); ++v) f[v] = depth + levels[v];
  return f;
}

}  // namespace

Instance gen_random_tree(Vertex n, int max_degree, std::uint64_t seed, Vertex window) {
  if (n < 1) throw std::invalid_argument("random tree needs n >= 1");
  if ((n > 2 && max_degree < 2) || (n == 2 && max_degree < 1))
    throw InfeasibleDegree("no tree on " + std::to_string(n) + " vertices has max degree " +
                           std::to_string(max_degree));
  SplitMix64 rng(seed);
  std::vector<EdgeSpec> edges;
  edges.reserve(static_cast<std::size_t>(n));
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> open{0};
  std::vector<Vertex> candidates;
  for (Vertex v = 1; v < n; ++v) {
    Vertex parent;
    if (window > 0) {
      candidates.clear();
      for (Vertex u = std::max<Vertex>(0, v - window); u < v; ++u)
        if (degree[u] < max_degree) candidates.push_back(u);
      parent = candidates[rng.below(candidates.size())];
    } else {
      const auto slot = rng.below(open.size());
      parent = open[slot];
      if (degree[parent] + 1 >= max_degree) {
        open[slot] = open.back();
        open.pop_back();
      }
    }
    ++degree[parent];
    ++degree[v];
    edges.push_back({parent, v, 1});
    if (window == 0 && degree[v] < max_degree) open.push_back(v);
  }
  const auto goal = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  return make_instance(n, edges, goal);
}

Instance with_goal(const Instance& inst, Vertex goal) {
  if (!inst.graph.contains(goal)) throw GraphError("goal out of range");
  Instance out;
  out.graph = inst.graph;
  out.goal = goal;
  out.predictions = perfect_predictions(out.graph, goal);
  return out;
}

Instance gen_lopsided(std::int64_t depth) {
  if (depth < 1) throw std::invalid_argument("lopsided tree needs depth >= 1");
  if (depth > 24) throw std::invalid_argument("lopsided tree depth above 24 is too large");
  std::vector<EdgeSpec> edges;
  // Ids: 0 root, 1 = a, 2 = b, then the rest of the binary side, then the path.
  Vertex next = 3;
  edges.push_back({0, 1, 1});
  edges.push_back({0, 2, 1});
  std::vector<Vertex> layer{1};
  for (std::int64_t level = 2; level <= depth; ++level) {
    std::vector<Vertex> below;
    for (Vertex p : layer) {
      for (int c = 0; c < 2; ++c) {
        edges.push_back({p, next, 1});
        below.push_back(next++);
      }
    }
    layer = std::move(below);
  }
  Vertex tail = 2;
  for (std::int64_t level = 2; level <= depth; ++level) {
    edges.push_back({tail, next, 1});
    tail = next++;
  }
  Instance inst;
  inst.graph = Graph(next, edges, 0);
  inst.goal = tail;
  inst.predictions = null_predictions(inst.graph, depth);
  return inst;
}

Vertex spider_leaf(int arm, std::int64_t depth) {
  return static_cast<Vertex>(1 + static_cast<std::int64_t>(arm) * depth + depth - 1);
}

Instance gen_spider(int arms, std::int64_t depth, int goal_arm) {
  if (arms < 2 || depth < 1) throw std::invalid_argument("spider needs arms >= 2 and depth >= 1");
  if (goal_arm < 0 || goal_arm >= arms) throw std::invalid_argument("goal arm out of range");
  const auto n = static_cast<Vertex>(1 + static_cast<std::int64_t>(arms) * depth);
  std::vector<EdgeSpec> edges;
  for (int a = 0; a < arms; ++a) {
    Vertex prev = 0;
    for (std::int64_t j = 0; j < depth; ++j) {
      const auto v = static_cast<Vertex>(1 + a * depth + j);
      edges.push_back({prev, v, 1});
      prev = v;
    }
  }
  Instance inst;
  inst.graph = Graph(n, edges, 0);
  inst.goal = spider_leaf(goal_arm, depth);
  inst.predictions = null_predictions(inst.graph, depth);
  return inst;
}

Vertex last_reached(std::span<const Vertex> leaves, std::span<const Vertex> visit_order) {
  std::vector<std::int64_t> when;
  for (Vertex leaf : leaves) {
    auto it = std::find(visit_order.begin(), visit_order.end(), leaf);
    if (it == visit_order.end()) return *std::min_element(leaves.begin(), leaves.end());
    when.push_back(it - visit_order.begin());
  }
  const auto latest = std::max_element(when.begin(), when.end()) - when.begin();
  return leaves[static_cast<std::size_t>(latest)];
}

Instance gen_spider_adversarial(int arms, std::int64_t depth, const ReplayExplorer& explorer) {
  if (!explorer) throw std::invalid_argument("adversarial spider needs an explorer to replay");
  Instance clone = gen_spider(arms, depth, 0);
  clone.goal = kHiddenGoal;
  const auto order = explorer(clone);
  std::vector<Vertex> leaves;
  for (int a = 0; a < arms; ++a) leaves.push_back(spider_leaf(a, depth));
  const Vertex leaf = last_reached(leaves, order);
  clone.goal = leaf;
  return clone;
}

Instance corrupt_predictions(const Instance& inst, Vertex k, Prediction lo, Prediction hi,
                             std::uint64_t seed, bool allow_goal) {
  if (!inst.has_goal()) throw GraphError("corrupting predictions needs a goal");
  if (hi < lo) throw RangeTooNarrow("empty prediction range");
  Instance out = with_goal(inst, inst.goal);
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < out.graph.size(); ++v)
    if (allow_goal || v != out.goal) pool.push_back(v);
  if (k < 0 || static_cast<std::size_t>(k) > pool.size())
    throw std::invalid_argument("cannot corrupt " + std::to_string(k) + " of " +
                                std::to_string(pool.size()) + " candidate vertices");
  SplitMix64 rng(seed);
  rng.shuffle(pool);
  for (Vertex i = 0; i < k; ++i) {
    const Vertex v = pool[static_cast<std::size_t>(i)];
    const Prediction truth = out.predictions[v];
    if (lo == hi && lo == truth)
      throw RangeTooNarrow("no wrong value for vertex " + std::to_string(v) + " in range");
    Prediction x;
    do {
      x = rng.between(lo, hi);
    } while (x == truth);
    out.predictions[v] = x;
  }
  return out;
}

Instance gen_weighted_hardness(int height, Length leaf_length, std::int64_t goal_leaf) {
  if (height < 1 || height > 20 || leaf_length < 1)
    throw std::invalid_argument("hardness tree needs 1 <= h <= 20 and L >= 1");
  const auto n = static_cast<Vertex>((std::int64_t{2} << height) - 1);
  const std::int64_t first_leaf = (std::int64_t{1} << height) - 1;
  if (goal_leaf < 0 || goal_leaf >= (std::int64_t{1} << height))
    throw std::invalid_argument("goal leaf out of range");
  std::vector<EdgeSpec> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v, v >= first_leaf ? leaf_length : 0});
  Instance inst;
  inst.graph = Graph(n, edges, 0, LengthPolicy::kNonNegative);
  inst.goal = static_cast<Vertex>(first_leaf + goal_leaf);
  inst.predictions.assign(static_cast<std::size_t>(n), leaf_length);
  for (Vertex v = static_cast<Vertex>(first_leaf); v < n; ++v) inst.predictions[v] = 2 * leaf_length;
  return inst;
}

Instance gen_grid(int width, int height, Length max_length, Vertex k, std::uint64_t seed) {
  if (width < 2 || height < 2) throw std::invalid_argument("grid needs w, h >= 2");
  if (max_length < 1) throw std::invalid_argument("grid edge lengths must be >= 1");
  SplitMix64 rng(seed);
  SplitMix64 lengths = rng.split(1);
  std::vector<EdgeSpec> edges;
  auto id = [width](int x, int y) { return static_cast<Vertex>(y * width + x); };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width)
        edges.push_back({id(x, y), id(x + 1, y), max_length > 1 ? lengths.between(1, max_length) : 1});
      if (y + 1 < height)
        edges.push_back({id(x, y), id(x, y + 1), max_length > 1 ? lengths.between(1, max_length) : 1});
    }
  }
  Instance inst = make_instance(static_cast<Vertex>(width * height), edges, id(width - 1, height - 1));
  const Prediction top = 2 * inst.predictions[inst.graph.root()];
  return corrupt_predictions(inst, k, 0, top, rng.split(2).next());
}

Instance generate(const GeneratorSpec& spec, const ReplayExplorer& explorer) {
  SplitMix64 rng(spec.seed);
  if (spec.family == "random-tree") {
    if (spec.goal == GoalPolicy::kAdversarial)
      throw std::invalid_argument("adversarial goals are only defined for spiders");
    Instance inst = gen_random_tree(spec.n, spec.delta, rng.split(0).next(), spec.window);
    if (spec.goal == GoalPolicy::kFixed) inst = with_goal(inst, spec.goal_vertex);
    return corrupt_predictions(inst, spec.k, 0, spec.n, rng.split(1).next());
  }
  if (spec.k != 0 && spec.family != "grid")
    throw std::invalid_argument("family '" + spec.family + "' has fixed predictions; k must be 0");
  if (spec.family == "lopsided") return gen_lopsided(spec.depth);
  if (spec.family == "spider") {
    switch (spec.goal) {
      case GoalPolicy::kAdversarial: return gen_spider_adversarial(spec.delta, spec.depth, explorer);
      case GoalPolicy::kFixed: return gen_spider(spec.delta, spec.depth, spec.goal_vertex);
      case GoalPolicy::kRandom:
        return gen_spider(spec.delta, spec.depth, static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.delta))));
    }
  }
  if (spec.family == "weighted-hardness") {
    const std::int64_t leaves = std::int64_t{1} << std::clamp<std::int64_t>(spec.depth, 1, 20);
    const std::int64_t leaf = spec.goal == GoalPolicy::kFixed
                                  ? spec.goal_vertex
                                  : static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(leaves)));
    return gen_weighted_hardness(static_cast<int>(spec.depth), std::max<Length>(spec.max_length, 1), leaf);
  }
  if (spec.family == "grid") {
    Instance inst = gen_grid(spec.width, spec.height, spec.max_length, spec.k, spec.seed);
    if (spec.goal == GoalPolicy::kFixed && spec.goal_vertex != inst.goal) {
      Instance moved = with_goal(inst, spec.goal_vertex);
      const Prediction top = 2 * moved.predictions[moved.graph.root()];
      return corrupt_predictions(moved, spec.k, 0, top, rng.split(2).next());
    }
    return inst;
  }
  throw std::invalid_argument("unknown family '" + spec.family + "'");
}

}  // namespace predsearch
