// Command-line front end: generate instances, run explorers, re-check saved
// traces, and sweep parameter grids into CSV.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "predsearch/experiment.hpp"
#include "predsearch/io.hpp"
#include "predsearch/oracle.hpp"
#include "predsearch/runner.hpp"
#include "predsearch/trace.hpp"

namespace {

using namespace predsearch;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitCheck = 2;
constexpr int kExitInternal = 3;

struct Flags {
  std::string config_path;
  std::vector<std::string> algorithms;
  std::string instance;
  std::string family;
  std::string n, delta, depth, k;
  int width = 0, height = 0;
  Vertex window = 0;
  Length max_length = 0;
  std::string goal;
  Vertex goal_vertex = kNoVertex;
  std::uint64_t seed = 0;
  std::int64_t reps = 0;
  std::int64_t beta = 0, c1 = 0;
  std::int64_t distance = 0;
  std::vector<std::string> verify;
  std::string trace;
  std::string out;
  bool timing = false;
};

struct Options {
  CLI::Option* algorithm = nullptr;
  CLI::Option* instance = nullptr;
  CLI::Option* family = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* depth = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* width = nullptr;
  CLI::Option* height = nullptr;
  CLI::Option* window = nullptr;
  CLI::Option* max_length = nullptr;
  CLI::Option* goal = nullptr;
  CLI::Option* goal_vertex = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* reps = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* c1 = nullptr;
  CLI::Option* distance = nullptr;
  CLI::Option* verify = nullptr;
  CLI::Option* trace = nullptr;
};

void add_instance_flags(CLI::App& cmd, Flags& f, Options& o, bool ranges) {
  const std::string kind = ranges ? " (value, list a,b,c or range a..b[:step])" : "";
  o.family = cmd.add_option("--family", f.family, "random-tree | lopsided | spider | weighted-hardness | grid");
  o.n = cmd.add_option("--n", f.n, "vertex count" + kind);
  o.delta = cmd.add_option("--delta", f.delta, "maximum degree, or arm count for spiders" + kind);
  o.depth = cmd.add_option("--depth", f.depth, "depth for lopsided / spider / weighted-hardness" + kind);
  o.k = cmd.add_option("--k", f.k, "number of corrupted predictions" + kind);
  o.width = cmd.add_option("--width", f.width, "grid width");
  o.height = cmd.add_option("--height", f.height, "grid height");
  o.window = cmd.add_option("--window", f.window, "random trees: attach among the last W vertices");
  o.max_length = cmd.add_option("--max-length", f.max_length, "grid edge lengths in [1, L]; leaf length for weighted-hardness");
  o.goal = cmd.add_option("--goal", f.goal, "fixed | random | adversarial");
  o.goal_vertex = cmd.add_option("--goal-vertex", f.goal_vertex, "goal vertex (or spider arm) for --goal fixed");
  o.seed = cmd.add_option("--seed", f.seed, "generator seed");
}

void add_run_flags(CLI::App& cmd, Flags& f, Options& o) {
  cmd.add_option("--config", f.config_path, "JSON config; flags override its keys")->check(CLI::ExistingFile);
  o.algorithm = cmd.add_option("--algorithm", f.algorithms,
                               "known-dist | treex | fullinfo-l0 | fullinfo-l1 | blind-dfs | greedy")
                    ->delimiter(',');
  o.instance = cmd.add_option("--instance", f.instance, "instance JSON file instead of a generator");
  add_instance_flags(cmd, f, o, true);
  o.reps = cmd.add_option("--reps", f.reps, "repetitions; rep i uses seed + i");
  o.beta = cmd.add_option("--beta", f.beta, "tree explorer growth parameter (default 1)");
  o.c1 = cmd.add_option("--c1", f.c1, "tree explorer budget constant (default 86)");
  o.distance = cmd.add_option("--distance", f.distance, "D for known-dist (default d(r, g))");
  o.verify = cmd.add_option("--verify", f.verify, "checker ids to run on every trace, or 'all'")->delimiter(',');
  o.trace = cmd.add_option("--trace", f.trace, "write trace bundles with this prefix");
  cmd.add_option("--out", f.out, "CSV output path (default stdout)");
  cmd.add_flag("--timing", f.timing, "fill the wall_time column");
}

std::vector<std::int64_t> axis_values(const std::string& text, const std::string& field, bool ranges) {
  auto values = parse_int_list(text, field);
  if (!ranges && values.size() != 1) throw ConfigError(field + ": single value expected (use sweep for ranges)");
  return values;
}

ExperimentConfig build_config(const Flags& f, const Options& o, bool ranges) {
  ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    std::stringstream text;
    text << in.rdbuf();
    c = config_from_json(text.str());
  }
  if (o.algorithm->count()) c.algorithms = f.algorithms;
  if (o.instance->count()) c.instance_path = f.instance;
  if (o.family->count()) c.spec.family = f.family;
  if (o.n->count()) {
    const auto v = axis_values(f.n, "n", ranges);
    c.n_values.assign(v.begin(), v.end());
  }
  if (o.delta->count()) {
    const auto v = axis_values(f.delta, "delta", ranges);
    c.delta_values.assign(v.begin(), v.end());
  }
  if (o.depth->count()) c.depth_values = axis_values(f.depth, "depth", ranges);
  if (o.k->count()) {
    const auto v = axis_values(f.k, "k", ranges);
    c.k_values.assign(v.begin(), v.end());
  }
  if (o.width->count()) c.spec.width = f.width;
  if (o.height->count()) c.spec.height = f.height;
  if (o.window->count()) c.spec.window = f.window;
  if (o.max_length->count()) c.spec.max_length = f.max_length;
  if (o.goal->count()) {
    try {
      c.spec.goal = goal_policy_from_string(f.goal);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("goal: ") + e.what());
    }
  }
  if (o.goal_vertex->count()) c.spec.goal_vertex = f.goal_vertex;
  if (o.seed->count()) c.spec.seed = f.seed;
  if (o.reps->count()) c.reps = f.reps;
  if (o.beta->count()) c.params.beta = f.beta;
  if (o.c1->count()) c.params.c1 = f.c1;
  if (o.distance->count()) c.distance = f.distance;
  if (o.verify->count()) c.verify = f.verify;
  if (o.trace->count()) c.trace_prefix = f.trace;
  if (f.timing) c.timing = true;
  if (!ranges) {
    const auto single = [](std::size_t size, const char* field) {
      if (size > 1) throw ConfigError(std::string(field) + ": single value expected (use sweep for ranges)");
    };
    single(c.n_values.size(), "n");
    single(c.delta_values.size(), "delta");
    single(c.depth_values.size(), "depth");
    single(c.k_values.size(), "k");
  }
  return c;
}

int run_rows(const Flags& f, const Options& o, bool ranges) {
  const ExperimentConfig config = build_config(f, o, ranges);
  const ExperimentReport report = run_experiment(config);
  if (f.out.empty()) {
    write_rows_csv(std::cout, report.rows, config.timing);
  } else {
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw ConfigError("out: cannot open '" + f.out + "'");
    write_rows_csv(out, report.rows, config.timing);
  }
  for (const auto& failure : report.failures) std::cerr << "check failed: " << failure << '\n';
  return report.failures.empty() ? kExitOk : kExitCheck;
}

int generate_instance(const Flags& f, const Options& o) {
  GeneratorSpec spec;
  if (o.family->count()) spec.family = f.family;
  if (o.n->count()) spec.n = axis_values(f.n, "n", false).front();
  if (o.delta->count()) spec.delta = static_cast<int>(axis_values(f.delta, "delta", false).front());
  if (o.depth->count()) spec.depth = axis_values(f.depth, "depth", false).front();
  if (o.k->count()) spec.k = axis_values(f.k, "k", false).front();
  if (o.width->count()) spec.width = f.width;
  if (o.height->count()) spec.height = f.height;
  if (o.window->count()) spec.window = f.window;
  if (o.max_length->count()) spec.max_length = f.max_length;
  if (o.goal->count()) {
    try {
      spec.goal = goal_policy_from_string(f.goal);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("goal: ") + e.what());
    }
  }
  if (o.goal_vertex->count()) spec.goal_vertex = f.goal_vertex;
  if (o.seed->count()) spec.seed = f.seed;
  ReplayExplorer explorer;
  if (spec.goal == GoalPolicy::kAdversarial) {
    if (f.algorithms.size() != 1) throw ConfigError("algorithm: adversarial goals need exactly one explorer");
    explorer = replay_explorer(algorithm_from_string(f.algorithms.front()));
  }
  const Instance inst = generate(spec, explorer);
  if (f.out.empty()) {
    write_instance_json(std::cout, inst);
    std::cout << '\n';
  } else {
    save_instance(f.out, inst);
  }
  return kExitOk;
}

int verify_trace(const Flags& f) {
  if (f.instance.empty() || f.trace.empty()) throw ConfigError("verify: --instance and --trace are required");
  const Instance inst = load_instance(f.instance);
  const RunTrace trace = read_trace_bundle(f.trace);
  std::vector<std::string> ids;
  for (const auto& id : f.verify.empty() ? std::vector<std::string>{"all"} : f.verify) {
    if (id == "all") {
      for (const auto& a : applicable_lemmas(trace.algorithm)) ids.push_back(a);
    } else {
      ids.push_back(id);
    }
  }
  bool ok = true;
  for (const auto& id : ids) {
    CheckResult r;
    try {
      r = check_lemma(inst, trace, id);
    } catch (const UnknownLemmaId& e) {
      throw ConfigError(std::string("verify: ") + e.what());
    }
    const char* status = !r.applicable ? "N/A " : r.pass ? "PASS" : "FAIL";
    std::cout << status << ' ' << id << " measured=" << r.measured;
    if (!r.witness.empty()) std::cout << " : " << r.witness;
    std::cout << '\n';
    ok = ok && (r.pass || !r.applicable);
  }
  return ok ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goal search on graphs with untrusted distance predictions"};
  app.require_subcommand(1);

  Flags gen_flags, run_flags, sweep_flags, verify_flags;
  Options gen_opts, run_opts, sweep_opts;

  CLI::App* gen = app.add_subcommand("generate", "write a generated instance as JSON");
  add_instance_flags(*gen, gen_flags, gen_opts, false);
  gen->add_option("--algorithm", gen_flags.algorithms, "explorer used to place an adversarial goal");
  gen->add_option("--out", gen_flags.out, "output path (default stdout)");

  CLI::App* run = app.add_subcommand("run", "run explorers and print one CSV row per run");
  add_run_flags(*run, run_flags, run_opts);

  CLI::App* sweep = app.add_subcommand("sweep", "like run, with ranges over n, delta, depth and k");
  add_run_flags(*sweep, sweep_flags, sweep_opts);

  CLI::App* verify = app.add_subcommand("verify", "re-run checkers on a saved trace");
  verify->add_option("--instance", verify_flags.instance, "instance JSON")->required();
  verify->add_option("--trace", verify_flags.trace, "trace bundle prefix")->required();
  verify->add_option("--verify", verify_flags.verify, "checker ids or 'all' (default all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return generate_instance(gen_flags, gen_opts);
    if (*run) return run_rows(run_flags, run_opts, false);
    if (*sweep) return run_rows(sweep_flags, sweep_opts, true);
    if (*verify) return verify_trace(verify_flags);
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
