#pragma once

#include <string>
#include <utility>
#include <vector>

#include "predsearch/env.hpp"
#include "predsearch/planner.hpp"
#include "predsearch/treex.hpp"

namespace predsearch {

// Everything an algorithm run leaves behind for offline checking.
struct RunTrace {
  std::string algorithm;
  Vertex root = kNoVertex;
  std::int64_t distance = 0;  // D handed to the known-distance explorer
  TreeXParams params;
  std::vector<MoveRecord> moves;
  // (vertex, anchor) in first-visit order as the known-distance explorer
  // computed them; kNoVertex when the vertex has no anchor.
  std::vector<std::pair<Vertex, Vertex>> anchors;
  std::vector<RoundRecord> rounds;       // tree explorer only
  ErrorMode mode = ErrorMode::kL0;       // planner only
  std::vector<PlanRound> plan;           // planner only
  bool goal_found = false;
};

// Positions v_0 = root, v_1, ... reconstructed from the move log.
std::vector<Vertex> positions(const RunTrace& trace);

// Writes PREFIX.meta.json and PREFIX.moves.csv, plus PREFIX.rounds.csv or
// PREFIX.plan.json when the trace has rounds or a plan.
void write_trace_bundle(const std::string& prefix, const RunTrace& trace);
RunTrace read_trace_bundle(const std::string& prefix);

}  // namespace predsearch
