#include "predsearch/runner.hpp"

#include <algorithm>
#include <memory>

#include "predsearch/oracle.hpp"

namespace predsearch {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kKnownDist: return "known-dist";
    case Algorithm::kTreeX: return "treex";
    case Algorithm::kFullInfoL0: return "fullinfo-l0";
    case Algorithm::kFullInfoL1: return "fullinfo-l1";
    case Algorithm::kBlindDfs: return "blind-dfs";
    case Algorithm::kGreedy: return "greedy";
  }
  return "?";
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all = {Algorithm::kKnownDist,  Algorithm::kTreeX,
                                             Algorithm::kFullInfoL0, Algorithm::kFullInfoL1,
                                             Algorithm::kBlindDfs,   Algorithm::kGreedy};
  return all;
}

Algorithm algorithm_from_string(const std::string& name) {
  for (Algorithm a : all_algorithms())
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

RunOutput run_algorithm(const Instance& inst, Algorithm algorithm, const RunOptions& options) {
  RunOutput out;
  out.trace.algorithm = to_string(algorithm);
  out.trace.root = inst.graph.root();
  out.trace.params = options.params;

  if (algorithm == Algorithm::kFullInfoL0 || algorithm == Algorithm::kFullInfoL1) {
    const ErrorMode mode = algorithm == Algorithm::kFullInfoL0 ? ErrorMode::kL0 : ErrorMode::kL1;
    PlanResult plan = run_fullinfo(inst, mode);
    out.trace.mode = mode;
    out.trace.moves = plan.ledger.moves();
    out.trace.plan = std::move(plan.rounds);
    out.found = plan.ledger.goal_found();
    out.cost = plan.ledger.total();
    out.rounds = static_cast<std::int64_t>(out.trace.plan.size());
    out.visit_order = std::move(plan.visit_order);
  } else {
    auto shared = std::make_shared<const Instance>(inst);
    Environment env(shared);
    ExplorationView& view = env.view();
    switch (algorithm) {
      case Algorithm::kKnownDist: {
        std::int64_t d = 0;
        if (options.distance)
          d = *options.distance;
        else if (inst.has_goal())
          d = optimal_cost(inst);
        else
          throw std::invalid_argument("known-dist on a goal-free instance needs an explicit D");
        out.trace.distance = d;
        KnownDistExplorer explorer(view, d, options.budget);
        explorer.run(options.observer);
        for (Vertex v : explorer.visit_order()) out.trace.anchors.push_back({v, explorer.anchor(v)});
        out.rounds = 1;
        break;
      }
      case Algorithm::kTreeX: {
        TreeXResult result = run_treex(view, options.params);
        out.trace.rounds = std::move(result.rounds);
        out.rounds = static_cast<std::int64_t>(out.trace.rounds.size());
        break;
      }
      case Algorithm::kBlindDfs:
      case Algorithm::kGreedy: {
        const std::int64_t cap = options.step_cap > 0 ? options.step_cap : default_step_cap(inst.graph.size());
        baseline_explore(view, algorithm == Algorithm::kBlindDfs ? Baseline::kBlindDfs : Baseline::kGreedyDownhill,
                         cap);
        out.rounds = 1;
        break;
      }
      default:
        break;
    }
    out.trace.moves = view.ledger().moves();
    out.found = view.goal_found();
    out.cost = view.ledger().total();
    out.visit_order = view.visit_order();
  }
  out.trace.goal_found = out.found;
  if (inst.has_goal() && inst.graph.is_tree()) out.extra_exploration = extra_exploration(out.visit_order, inst);
  return out;
}

ReplayExplorer replay_explorer(Algorithm algorithm, const RunOptions& options) {
  return [algorithm, options](const Instance& goal_free) {
    RunOptions replay = options;
    // Null predictions put d(r, g) at f(r) whatever the goal.
    if (algorithm == Algorithm::kKnownDist && !replay.distance)
      replay.distance = std::max<std::int64_t>(goal_free.predictions[goal_free.graph.root()], 0);
    return run_algorithm(goal_free, algorithm, replay).visit_order;
  };
}

}  // namespace predsearch
