#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "predsearch/instances.hpp"
#include "predsearch/treex.hpp"

namespace predsearch {

// Bad configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::vector<std::string> algorithms = {"known-dist"};
  std::string instance_path;  // when set, replaces the generator
  GeneratorSpec spec;
  // Sweep axes. An empty axis takes its single value from `spec`.
  std::vector<Vertex> n_values;
  std::vector<int> delta_values;
  std::vector<std::int64_t> depth_values;
  std::vector<Vertex> k_values;
  TreeXParams params;
  std::optional<std::int64_t> distance;  // D for known-dist; default d(r, g)
  std::int64_t reps = 1;                 // rep i uses instance seed spec.seed + i
  std::vector<std::string> verify;       // checker ids, or "all" for the applicable ones
  std::string trace_prefix;              // one bundle per run, suffixed by run index when several
  bool timing = false;                   // fill wall_time; off keeps output byte-stable
};

struct ExperimentRow {
  std::uint64_t seed = 0;
  std::int64_t rep = 0;
  std::string family;
  Vertex n = 0;
  int delta = 0;
  std::int64_t errors = 0;
  std::optional<Length> dist;  // empty for goal-free instances
  std::string algorithm;
  std::string params;
  Length cost = 0;
  std::int64_t extra_exploration = -1;
  std::int64_t rounds = 0;
  bool found = false;
  std::vector<std::string> failed_checks;
  double wall_time = 0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;  // ordered by (axes, seed, rep, algorithm)
  std::vector<std::string> failures;  // "row i: checker: witness"
};

enum class Execution { kParallel, kSerial };

// Validates, then runs every (axes x rep x algorithm) job. Rows come back in
// job order whatever order the workers finish in.
ExperimentReport run_experiment(const ExperimentConfig& config, Execution execution = Execution::kParallel);

void validate(const ExperimentConfig& config);

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing);

// Reads a JSON config object. Keys mirror the command-line flags:
// algorithm (string or list), instance, family, n, delta, depth, k (number,
// list or "a..b[:step]" range), width, height, window, max_length, goal,
// goal_vertex, seed, reps, beta, c1, distance, verify, trace, timing.
// Unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});

// "5", "1,2,8" or "0..50" / "0..50:5".
std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& field);

}  // namespace predsearch
