#include "predsearch/trace.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace predsearch {

std::vector<Vertex> positions(const RunTrace& trace) {
  std::vector<Vertex> out{trace.root};
  for (const MoveRecord& m : trace.moves) out.push_back(m.to);
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_trace_bundle(const std::string& prefix, const RunTrace& trace) {
  nlohmann::json meta;
  meta["algorithm"] = trace.algorithm;
  meta["root"] = trace.root;
  meta["distance"] = trace.distance;
  meta["beta"] = trace.params.beta;
  meta["c1"] = trace.params.c1;
  meta["goal_found"] = trace.goal_found;
  if (!trace.anchors.empty()) meta["anchors"] = trace.anchors;
  open_out(prefix + ".meta.json") << meta.dump(1) << '\n';

  auto moves = open_out(prefix + ".moves.csv");
  write_trace_csv(moves, trace.moves);
  // Drop leftovers of an earlier bundle under the same prefix.
  std::filesystem::remove(prefix + ".rounds.csv");
  std::filesystem::remove(prefix + ".plan.json");
  if (!trace.rounds.empty()) {
    auto rounds = open_out(prefix + ".rounds.csv");
    write_rounds_csv(rounds, trace.rounds);
  }
  if (!trace.plan.empty()) {
    PlanResult plan;
    plan.mode = trace.mode;
    plan.rounds = trace.plan;
    auto out = open_out(prefix + ".plan.json");
    write_plan_json(out, plan);
  }
}

RunTrace read_trace_bundle(const std::string& prefix) {
  RunTrace trace;
  std::ifstream meta_in(prefix + ".meta.json");
  if (!meta_in) throw std::runtime_error("cannot read '" + prefix + ".meta.json'");
  const auto meta = nlohmann::json::parse(meta_in);
  trace.algorithm = meta.at("algorithm").get<std::string>();
  trace.root = meta.at("root").get<Vertex>();
  trace.distance = meta.at("distance").get<std::int64_t>();
  trace.params.beta = meta.at("beta").get<std::int64_t>();
  trace.params.c1 = meta.at("c1").get<std::int64_t>();
  trace.goal_found = meta.at("goal_found").get<bool>();
  if (meta.contains("anchors")) trace.anchors = meta.at("anchors").get<std::vector<std::pair<Vertex, Vertex>>>();

  std::ifstream moves(prefix + ".moves.csv");
  if (!moves) throw std::runtime_error("cannot read '" + prefix + ".moves.csv'");
  trace.moves = read_trace_csv(moves);
  if (std::ifstream rounds(prefix + ".rounds.csv"); rounds) trace.rounds = read_rounds_csv(rounds);
  if (std::ifstream plan_in(prefix + ".plan.json"); plan_in) {
    PlanResult plan = read_plan_json(plan_in);
    trace.mode = plan.mode;
    trace.plan = std::move(plan.rounds);
  }
  return trace;
}

}  // namespace predsearch
