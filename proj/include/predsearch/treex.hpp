#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "predsearch/env.hpp"
#include "predsearch/known_dist.hpp"

namespace predsearch {

class TreeTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A connected vertex subset of a tree with its induced adjacency, indexed by
// the original vertex ids. Built either from the agent's visited set or from
// a full TreeView.
struct Subtree {
  std::vector<Vertex> members;               // ascending
  std::vector<std::vector<Arc>> adjacency;   // id-indexed, arcs between members only

  std::size_t size() const { return members.size(); }
  int max_degree() const;
};

Subtree subtree_of_visited(const ExplorationView& view);
Subtree subtree_of(const TreeView& tree);

struct CentroidSplit {
  Vertex center = kNoVertex;
  Vertex a = kNoVertex;  // head of the largest component of T - center
  Vertex b = kNoVertex;  // head of the second largest
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
};

// Centroid plus the two neighbours heading the largest components. Both
// components exceed n / (2 * degree_bound). Throws TreeTooSmall when
// n <= 2 * degree_bound. Ties go to the smallest vertex id.
CentroidSplit centroid_split(const Subtree& tree, int degree_bound);
CentroidSplit centroid_split(const TreeView& tree, int degree_bound);

// Gamma(a, v): members whose path to v passes through the neighbour a.
std::vector<Vertex> component_through(const Subtree& tree, Vertex a, Vertex v);

// Distances from `source` inside the subtree (id-indexed, kInfiniteLength outside).
std::vector<Length> subtree_distances(const Subtree& tree, Vertex source);

// Value shared by strictly more than half of the votes, else -1.
std::int64_t dominating_vote(std::span<const std::int64_t> votes);

// Majority over gamma(u, c) = f(u) - d(u, c) for u in `voters`.
std::int64_t dominating_vote(std::span<const Vertex> voters, Vertex center,
                             std::span<const Length> distances_from_center,
                             const ExplorationView& view);

struct TreeXParams {
  std::int64_t beta = 1;
  std::int64_t c1 = kDefaultC1;
};

struct RoundRecord {
  std::int64_t rho = 0;
  std::int64_t base_budget = 0;    // B_rho
  std::int64_t budget_used = 0;    // budget handed to the known-distance run
  Vertex root = kNoVertex;         // r_rho
  std::int64_t estimate = 0;       // D_rho
  Length round_cost = 0;
  Length cumulative_cost = 0;
  bool goal_found = false;
  // Diagnostics not exported in the CSV.
  std::int64_t visited_in_run = 0;
  Vertex next_root = kNoVertex;
  std::int64_t next_estimate = 0;
  bool split_skipped = false;      // cumulative tree too small for a centroid split
  bool estimate_clamped = false;   // majority votes gave a negative estimate
};

struct TreeXResult {
  RunOutcome outcome = RunOutcome::kTreeExhausted;
  std::vector<RoundRecord> rounds;
};

// B_rho = (c1 + beta)^rho * (2 * Delta + 1), saturating.
std::int64_t round_budget(std::int64_t rho, const TreeXParams& params, int max_degree);

TreeXResult run_treex(ExplorationView& view, const TreeXParams& params = {});

// Columns: rho,B_rho,budget_used,r_rho,D_rho,round_cost,cumulative_cost,goal_found
void write_rounds_csv(std::ostream& out, std::span<const RoundRecord> rounds);
std::vector<RoundRecord> read_rounds_csv(std::istream& in);

}  // namespace predsearch
