#pragma once

#include <iosfwd>
#include <string>

#include "predsearch/graph.hpp"

namespace predsearch {

// {"n":..,"edges":[[u,v,len],..],"root":r,"goal":g,"predictions":[..]}
// "goal" is null for goal-free instances. An optional "child_order":"as-given"
// keeps the edge-list order as the child order instead of ascending ids.
void write_instance_json(std::ostream& out, const Instance& inst);
Instance read_instance_json(std::istream& in);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace predsearch
