#include "predsearch/io.hpp"

#include <fstream>

#include "json.hpp"

namespace predsearch {

void write_instance_json(std::ostream& out, const Instance& inst) {
  nlohmann::json doc;
  doc["n"] = inst.graph.size();
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const EdgeSpec& e : inst.graph.edges()) edges.push_back({e.u, e.v, e.length});
  doc["root"] = inst.graph.root();
  doc["goal"] = inst.has_goal() ? nlohmann::json(inst.goal) : nlohmann::json(nullptr);
  doc["predictions"] = inst.predictions;
  if (inst.graph.child_order() == ChildOrder::kAsGiven) doc["child_order"] = "as-given";
  if (inst.graph.length_policy() == LengthPolicy::kNonNegative) doc["zero_lengths"] = true;
  out << doc.dump() << '\n';
}

Instance read_instance_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("instance file: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<Vertex>();
    std::vector<EdgeSpec> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        throw GraphError("instance file: edges must be [u, v] or [u, v, len]");
      edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e.size() == 3 ? e[2].get<Length>() : 1});
    }
    const ChildOrder order = doc.value("child_order", std::string("ascending")) == "as-given"
                                 ? ChildOrder::kAsGiven
                                 : ChildOrder::kAscendingId;
    const LengthPolicy policy =
        doc.value("zero_lengths", false) ? LengthPolicy::kNonNegative : LengthPolicy::kPositive;
    Instance inst;
    inst.graph = Graph(n, edges, doc.at("root").get<Vertex>(), policy, order);
    const auto& goal = doc.at("goal");
    inst.goal = goal.is_null() ? kHiddenGoal : goal.get<Vertex>();
    inst.predictions = doc.at("predictions").get<std::vector<Prediction>>();
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("instance file: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open instance file '" + path + "'");
  return read_instance_json(in);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write instance file '" + path + "'");
  write_instance_json(out, inst);
}

}  // namespace predsearch
