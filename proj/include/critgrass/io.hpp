#pragma once

#include <json.hpp>
#include <string>

#include "critgrass/plabic.hpp"

namespace critgrass {

using Json = nlohmann::json;

GraphSpec parse_graph(const Json& j);
Json graph_json(const PlabicGraph& g);

// Weights keyed by edge id. Exact when every entry is an integer or a "p/q" string.
struct ParsedWeights {
  bool exact = true;
  Weights<mpq_class> q;
  Weights<double> d;
};
ParsedWeights parse_weights(const Json& j, const PlabicGraph& g);

Json point_json(const ExactPoint& p);
Json point_json(const FloatPoint& p);

// Parse errors surface as Errc::Parse.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

// Sorted keys, floats with 17 significant digits.
std::string dump(const Json& j, int indent = 2);

std::string subset_key(const Subset& s);

}  // namespace critgrass
