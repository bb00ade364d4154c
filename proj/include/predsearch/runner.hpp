#pragma once

#include <optional>
#include <string>
#include <vector>

#include "predsearch/instances.hpp"
#include "predsearch/known_dist.hpp"
#include "predsearch/trace.hpp"
#include "predsearch/treex.hpp"

namespace predsearch {

enum class Algorithm { kKnownDist, kTreeX, kFullInfoL0, kFullInfoL1, kBlindDfs, kGreedy };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);
const std::vector<Algorithm>& all_algorithms();

struct RunOptions {
  TreeXParams params;
  // D for the known-distance explorer; defaults to d(r, g).
  std::optional<std::int64_t> distance;
  std::int64_t budget = kUnboundedBudget;
  // Baseline step cap; 0 means 4 n^2.
  std::int64_t step_cap = 0;
  StepObserver observer;
};

struct RunOutput {
  RunTrace trace;
  bool found = false;
  Length cost = 0;
  std::int64_t rounds = 0;
  std::int64_t extra_exploration = -1;  // trees with a goal only
  std::vector<Vertex> visit_order;
};

// Runs one algorithm on an instance. Works on goal-free instances too, in
// which case the run ends when the explorer has nothing left to do.
RunOutput run_algorithm(const Instance& inst, Algorithm algorithm, const RunOptions& options = {});

// Replay hook for adversarial goal placement. The known-distance explorer
// takes D = f(r) unless options.distance is set.
ReplayExplorer replay_explorer(Algorithm algorithm, const RunOptions& options = {});

}  // namespace predsearch
