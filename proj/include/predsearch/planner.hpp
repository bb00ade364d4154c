#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "predsearch/env.hpp"
#include "predsearch/graph.hpp"
#include "predsearch/metric.hpp"

namespace predsearch {

enum class ErrorMode {
  kL0,  // phi(v)  = |{u : f(u) != d(u, v)}|
  kL1,  // phi1(v) = sum_u |f(u) - d(u, v)|
};

const char* to_string(ErrorMode mode);

// Implied error of every vertex: the prediction error the table would have
// if the goal sat there. Parallel over vertices.
std::vector<std::int64_t> implied_error(const Instance& inst, ErrorMode mode,
                                        const DistanceMatrix& dist);
std::vector<std::int64_t> implied_error_serial(const Instance& inst, ErrorMode mode,
                                               const DistanceMatrix& dist);
std::vector<std::int64_t> implied_error(const Instance& inst, ErrorMode mode);

struct SteinerTree {
  std::vector<Vertex> vertices;  // ascending
  std::vector<EdgeSpec> edges;   // u < v
  Length length = 0;
};

// Exact minimal subtree on trees; on other graphs the spanning tree of the
// metric closure over the terminals, realised as shortest paths and pruned
// (at most twice the optimum).
SteinerTree steiner_tree(const Graph& graph, std::span<const Vertex> terminals,
                         const DistanceMatrix& dist);

// Depth-first closed walk over the tree from `start`, children in ascending
// id. Returns the vertex sequence including the start at both ends.
std::vector<Vertex> euler_tour(const SteinerTree& tree, Vertex start);

struct PlanRound {
  std::int64_t rho = 0;
  std::int64_t threshold = 0;       // 2^rho
  std::vector<Vertex> members;      // S_rho, ascending
  SteinerTree steiner;
  Vertex anchor = kNoVertex;        // r_rho
  std::vector<Vertex> tour;         // vertices walked, possibly cut short at the goal
  Length transition_cost = 0;
  Length tour_cost = 0;
  bool goal_found = false;
};

struct PlanResult {
  ErrorMode mode = ErrorMode::kL0;
  CostLedger ledger;
  std::vector<Vertex> visit_order;  // first visits, starting with the root
  std::vector<PlanRound> rounds;
};

// Without a goal (replay on a goal-free clone) the rounds run until every
// vertex has been covered.
PlanResult run_fullinfo(const Instance& inst, ErrorMode mode);
PlanResult run_fullinfo(const Instance& inst, ErrorMode mode, const DistanceMatrix& dist);

// Per round: threshold, |S_rho|, steiner_length, tour, transition_cost, plus
// members/anchor/steiner vertices for replay by the verifier.
void write_plan_json(std::ostream& out, const PlanResult& plan);
PlanResult read_plan_json(std::istream& in);

}  // namespace predsearch
