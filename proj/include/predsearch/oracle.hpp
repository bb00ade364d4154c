#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "predsearch/env.hpp"
#include "predsearch/metric.hpp"
#include "predsearch/trace.hpp"

namespace predsearch {

// d(r, g): no explorer can pay less.
Length optimal_cost(const Instance& inst);

enum class Baseline {
  kBlindDfs,        // depth-first over the observed graph, ascending ids, walking back edge by edge
  kGreedyDownhill,  // step to a neighbour predicting one less; see baseline_explore
};

struct BaselineResult {
  bool found = false;
  bool capped = false;  // step cap hit before the goal
  std::int64_t steps = 0;
};

inline std::int64_t default_step_cap(Vertex n) {
  return 4 * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
}

// Greedy picks, in order: a neighbour with f = f(v) - 1 (unvisited first,
// then smallest id); the unvisited neighbour of smallest f; the neighbour of
// smallest f. Ties go to the smallest id. Without a goal both baselines stop
// when nothing new can be reached (blind) or at the cap (greedy).
BaselineResult baseline_explore(ExplorationView& view, Baseline strategy, std::int64_t step_cap);

class UnknownLemmaId : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckResult {
  bool pass = true;
  bool applicable = true;
  std::string witness;   // first violation, or a note when not applicable
  double measured = 0;   // checker-specific diagnostic (ratio, constant, count)
};

// Checker ids:
//   extra-exploration   off-path visits <= 7*Delta*|E ∩ V_t| when the run ends (known-dist)
//   extra-exploration-prefix  the same bound at every step; not implied before the goal
//                       is reached (an unvisited wrong goal-side child can hide the only
//                       error), so it is a diagnostic and absent from applicable_lemmas
//   cost-decomposition  cost_t <= d(r, v_t) + 10*extra_t + 16*|E ∩ V_t| (known-dist)
//   anchor-lca          reported anchors follow the anchor formula and correctly predicted
//                       visited vertices anchor at lca(u, g) (known-dist, D = d(r, g))
//   min-load-entry      the walk never crosses at a vertex into a child whose load exceeds the
//                       minimum active load (known-dist)
//   load-trichotomy     along the root-goal path, every off-path child load is at most twice
//                       the goal-side load, or at most half its visited size, or the single
//                       1/1/0 exception (known-dist)
//   separator           centroid components both exceed n/(2*Delta) (whole tree, or each
//                       round of a tree-explorer trace)
//   estimate-recovery   rounds with B >= 4|E|(2*Delta+1) start from D = d(r_rho, g) (treex)
//   estimate-recovery-visited  rounds whose voting tree has > 4*Delta*|E| vertices start
//                       from D = d(r_rho, g); the budget gate above does not imply this size
//   root-drift          d(r_rho, r) <= 2*B_rho (treex)
//   phi-midpoint        sum_{U} phi >= |S \ M(U)| on seeded samples (instance only)
//   phi-distance        d(u, v) <= phi(u) + phi(v) for all pairs (unit lengths)
//   phi1-distance       2*d(u, v) <= phi1(u) + phi1(v) for all pairs
//   steiner-size        |C_0| <= 1 and |C_rho| <= Delta*(2^rho + 1) (planner on trees)
//   transition-cost     first jump away from r and later jumps within the planner bounds
//   tour-cost           tour cost <= 2*(length of C_rho)
//   steiner-length      measured max length(C_rho) / 4^rho (never fails)
//   net-ball            each greedy R/8-net ball of S_rho has <= 2^(rho+1) members (planner, l0)
//   net-ball-weighted   |B(c)|*R <= 4*(phi1(w) + phi1(c)) and <= 4*2^(rho+1) (planner, l1)
//   search-order        completed rounds cover S_rho, first visits stay in C_rho, and the goal
//                       is found no later than the round whose set holds it (planner)
const std::vector<std::string>& lemma_ids();
// Checkers meaningful for traces of the given algorithm.
std::vector<std::string> applicable_lemmas(const std::string& algorithm);

CheckResult check_lemma(const Instance& inst, const RunTrace& trace, const std::string& id);

// Building blocks shared with the property suites.

// Vertices equidistant from every member of U.
// factor * d(u, v) <= phi(u) + phi(v) over all pairs.
CheckResult check_phi_pairs(std::span<const std::int64_t> phi, const DistanceMatrix& dist, Length factor);

std::vector<Vertex> midpoint_set(std::span<const Vertex> u_set, const DistanceMatrix& dist);
CheckResult check_phi_midpoint(std::span<const std::int64_t> phi, std::span<const Vertex> s_set,
                               std::span<const Vertex> u_set, const DistanceMatrix& dist);

struct NetBalls {
  Length diameter = 0;               // R
  Vertex far_a = kNoVertex;          // u*
  Vertex far_b = kNoVertex;          // v*
  std::vector<Vertex> centers;       // the net
  std::vector<std::vector<Vertex>> balls;  // B(c) per center
};

// Farthest-point R/8-net of `members` (first center: smallest id), each
// member assigned to its nearest center (ties: earlier center).
NetBalls greedy_net(std::span<const Vertex> members, const DistanceMatrix& dist);

}  // namespace predsearch
