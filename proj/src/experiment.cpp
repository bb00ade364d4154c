#include "predsearch/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "predsearch/io.hpp"
#include "predsearch/oracle.hpp"
#include "predsearch/runner.hpp"
#include "predsearch/trace.hpp"

namespace predsearch {

namespace {

using nlohmann::json;

struct Job {
  GeneratorSpec spec;
  std::int64_t rep = 0;
  Algorithm algorithm = Algorithm::kKnownDist;
};

template <class T>
std::vector<T> axis(const std::vector<T>& values, T fallback) {
  return values.empty() ? std::vector<T>{fallback} : values;
}

std::vector<Job> expand(const ExperimentConfig& config) {
  std::vector<Algorithm> algorithms;
  for (const auto& name : config.algorithms) algorithms.push_back(algorithm_from_string(name));
  std::vector<Job> jobs;
  for (Vertex n : axis(config.n_values, config.spec.n))
    for (int delta : axis(config.delta_values, config.spec.delta))
      for (std::int64_t depth : axis(config.depth_values, config.spec.depth))
        for (Vertex k : axis(config.k_values, config.spec.k))
          for (std::int64_t rep = 0; rep < config.reps; ++rep)
            for (Algorithm a : algorithms) {
              Job job{config.spec, rep, a};
              job.spec.n = n;
              job.spec.delta = delta;
              job.spec.depth = depth;
              job.spec.k = k;
              job.spec.seed = config.spec.seed + static_cast<std::uint64_t>(rep);
              jobs.push_back(job);
            }
  return jobs;
}

std::string params_label(const ExperimentConfig& config, Algorithm a) {
  switch (a) {
    case Algorithm::kTreeX: return "beta=" + std::to_string(config.params.beta) + ";c1=" + std::to_string(config.params.c1);
    case Algorithm::kKnownDist: return config.distance ? "D=" + std::to_string(*config.distance) : "D=d(r,g)";
    default: return "";
  }
}

std::string trace_path(const ExperimentConfig& config, std::size_t index, std::size_t total) {
  if (total == 1) return config.trace_prefix;
  return config.trace_prefix + "-" + std::to_string(index);
}

struct JobResult {
  ExperimentRow row;
  std::vector<std::string> failures;
};

JobResult run_job(const ExperimentConfig& config, const Job& job, const Instance* fixed, std::size_t index,
                  std::size_t total) {
  RunOptions options;
  options.params = config.params;
  options.distance = config.distance;

  Instance inst = fixed ? *fixed : generate(job.spec, replay_explorer(job.algorithm, options));
  const auto start = std::chrono::steady_clock::now();
  RunOutput out = run_algorithm(inst, job.algorithm, options);
  const auto stop = std::chrono::steady_clock::now();

  JobResult result;
  ExperimentRow& row = result.row;
  row.seed = job.spec.seed;
  row.rep = job.rep;
  row.family = fixed ? "file" : job.spec.family;
  row.n = inst.graph.size();
  row.delta = inst.graph.max_degree();
  if (inst.has_goal()) {
    row.errors = static_cast<std::int64_t>(erroneous_set(inst).size());
    row.dist = optimal_cost(inst);
  }
  row.algorithm = to_string(job.algorithm);
  row.params = params_label(config, job.algorithm);
  row.cost = out.cost;
  row.extra_exploration = out.extra_exploration;
  row.rounds = out.rounds;
  row.found = out.found;
  if (config.timing) row.wall_time = std::chrono::duration<double>(stop - start).count();

  std::vector<std::string> ids;
  for (const auto& id : config.verify) {
    if (id == "all") {
      for (const auto& a : applicable_lemmas(row.algorithm)) ids.push_back(a);
    } else {
      ids.push_back(id);
    }
  }
  for (const auto& id : ids) {
    CheckResult check = check_lemma(inst, out.trace, id);
    if (check.applicable && !check.pass) {
      row.failed_checks.push_back(id);
      result.failures.push_back("row " + std::to_string(index) + ": " + id + ": " + check.witness);
    }
  }
  if (!config.trace_prefix.empty()) write_trace_bundle(trace_path(config, index, total), out.trace);
  return result;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::vector<std::int64_t> int_values(const json& value, const std::string& field) {
  if (value.is_number_integer()) return {value.get<std::int64_t>()};
  if (value.is_string()) return parse_int_list(value.get<std::string>(), field);
  if (value.is_array()) {
    std::vector<std::int64_t> out;
    for (const auto& item : value) {
      if (!item.is_number_integer()) throw ConfigError(field + ": expected integers");
      out.push_back(item.get<std::int64_t>());
    }
    return out;
  }
  throw ConfigError(field + ": expected an integer, a list or a range");
}

std::int64_t int_value(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw ConfigError(field + ": expected an integer");
  return value.get<std::int64_t>();
}

std::string string_value(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError(field + ": expected a string");
  return value.get<std::string>();
}

template <class T>
std::vector<T> narrow(const std::vector<std::int64_t>& values) {
  return {values.begin(), values.end()};
}

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& field) {
  auto to_int = [&](const std::string& piece) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size()) throw ConfigError(field + ": '" + piece + "' is not an integer");
    return v;
  };
  std::vector<std::int64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::string rest = text.substr(dots + 2);
    const auto colon = rest.find(':');
    const std::int64_t lo = to_int(text.substr(0, dots));
    const std::int64_t hi = to_int(rest.substr(0, colon));
    const std::int64_t step = colon == std::string::npos ? 1 : to_int(rest.substr(colon + 1));
    if (step <= 0) throw ConfigError(field + ": range step must be positive");
    if (hi < lo) throw ConfigError(field + ": empty range '" + text + "'");
    for (std::int64_t v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(to_int(piece));
  if (out.empty()) throw ConfigError(field + ": no values");
  return out;
}

void validate(const ExperimentConfig& config) {
  if (config.algorithms.empty()) throw ConfigError("algorithm: none given");
  for (const auto& name : config.algorithms) {
    try {
      algorithm_from_string(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("algorithm: ") + e.what());
    }
  }
  if (config.reps < 1) throw ConfigError("reps: must be at least 1");
  if (config.params.beta < 1) throw ConfigError("beta: must be at least 1");
  if (config.params.c1 < 1) throw ConfigError("c1: must be at least 1");
  const auto& ids = lemma_ids();
  for (const auto& id : config.verify)
    if (id != "all" && std::find(ids.begin(), ids.end(), id) == ids.end())
      throw ConfigError("verify: unknown checker '" + id + "'");
  for (Vertex n : config.n_values)
    if (n < 1) throw ConfigError("n: must be positive");
  for (int d : config.delta_values)
    if (d < 1) throw ConfigError("delta: must be positive");
  for (Vertex k : config.k_values)
    if (k < 0) throw ConfigError("k: must be non-negative");
  if (config.instance_path.empty()) {
    static const std::vector<std::string> families = {"random-tree", "lopsided", "spider", "weighted-hardness",
                                                      "grid"};
    if (std::find(families.begin(), families.end(), config.spec.family) == families.end())
      throw ConfigError("family: unknown '" + config.spec.family + "'");
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config, Execution execution) {
  validate(config);
  std::optional<Instance> fixed;
  if (!config.instance_path.empty()) fixed = load_instance(config.instance_path);
  const std::vector<Job> jobs = expand(config);
  const auto total = jobs.size();
  std::vector<JobResult> results(total);
  std::vector<std::exception_ptr> errors(total);

  auto body = [&](std::size_t i) {
    try {
      results[i] = run_job(config, jobs[i], fixed ? &*fixed : nullptr, i, total);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (execution == Execution::kParallel) {
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < total; ++i) body(i);
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  ExperimentReport report;
  report.rows.reserve(total);
  for (auto& r : results) {
    report.rows.push_back(std::move(r.row));
    for (auto& f : r.failures) report.failures.push_back(std::move(f));
  }
  return report;
}

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing) {
  out << "seed,rep,family,n,delta,errors,dist,algorithm,params,cost,extra_exploration,rounds,found,"
         "failed_checks,wall_time\n";
  for (const auto& r : rows) {
    std::string failed;
    for (const auto& id : r.failed_checks) failed += (failed.empty() ? "" : ";") + id;
    out << r.seed << ',' << r.rep << ',' << csv_field(r.family) << ',' << r.n << ',' << r.delta << ','
        << r.errors << ',' << (r.dist ? std::to_string(*r.dist) : "") << ',' << r.algorithm << ','
        << csv_field(r.params) << ',' << r.cost << ',';
    if (r.extra_exploration >= 0) out << r.extra_exploration;
    out << ',' << r.rounds << ',' << (r.found ? 1 : 0) << ',' << failed << ',';
    if (timing) {
      std::ostringstream t;
      t.precision(6);
      t << std::fixed << r.wall_time;
      out << t.str();
    }
    out << '\n';
  }
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c = std::move(base);
  for (const auto& [key, value] : doc.items()) {
    if (key == "algorithm") {
      c.algorithms.clear();
      if (value.is_array()) {
        for (const auto& item : value) c.algorithms.push_back(string_value(item, key));
      } else {
        c.algorithms.push_back(string_value(value, key));
      }
    } else if (key == "instance") {
      c.instance_path = string_value(value, key);
    } else if (key == "family") {
      c.spec.family = string_value(value, key);
    } else if (key == "n") {
      c.n_values = narrow<Vertex>(int_values(value, key));
    } else if (key == "delta") {
      c.delta_values = narrow<int>(int_values(value, key));
    } else if (key == "depth") {
      c.depth_values = int_values(value, key);
    } else if (key == "k") {
      c.k_values = narrow<Vertex>(int_values(value, key));
    } else if (key == "width") {
      c.spec.width = static_cast<int>(int_value(value, key));
    } else if (key == "height") {
      c.spec.height = static_cast<int>(int_value(value, key));
    } else if (key == "window") {
      c.spec.window = int_value(value, key);
    } else if (key == "max_length") {
      c.spec.max_length = int_value(value, key);
    } else if (key == "goal") {
      try {
        c.spec.goal = goal_policy_from_string(string_value(value, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("goal: ") + e.what());
      }
    } else if (key == "goal_vertex") {
      c.spec.goal_vertex = int_value(value, key);
    } else if (key == "seed") {
      c.spec.seed = static_cast<std::uint64_t>(int_value(value, key));
    } else if (key == "reps") {
      c.reps = int_value(value, key);
    } else if (key == "beta") {
      c.params.beta = int_value(value, key);
    } else if (key == "c1") {
      c.params.c1 = int_value(value, key);
    } else if (key == "distance") {
      c.distance = int_value(value, key);
    } else if (key == "verify") {
      c.verify.clear();
      if (value.is_array()) {
        for (const auto& item : value) c.verify.push_back(string_value(item, key));
      } else {
        c.verify.push_back(string_value(value, key));
      }
    } else if (key == "trace") {
      c.trace_prefix = string_value(value, key);
    } else if (key == "timing") {
      if (!value.is_boolean()) throw ConfigError("timing: expected true or false");
      c.timing = value.get<bool>();
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

}  // namespace predsearch
