#include "critgrass/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "critgrass/errors.hpp"

namespace critgrass {

namespace {

int as_id(const Json& v, const char* what) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      size_t used = 0;
      int x = std::stoi(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  fail(Errc::Parse, std::string("expected an integer ") + what);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), Errc::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void emit(std::ostringstream& os, const Json& j, int indent, int depth) {
  auto pad = [&](int d) {
    if (indent > 0) os << '\n' << std::string(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_primitive();
      os << '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        if (!flat) pad(depth + 1);
        emit(os, j[i], flat ? 0 : indent, depth + 1);
      }
      if (!flat) pad(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string subset_key(const Subset& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

GraphSpec parse_graph(const Json& j) {
  GraphSpec s;
  const Json& n = field(j, "n");
  require(n.is_number_integer() && n.get<int>() >= 1, Errc::Parse, "\"n\" must be a positive integer");
  s.n = n.get<int>();
  for (const auto& v : field(j, "vertices")) {
    GraphSpec::V x{};
    x.id = as_id(field(v, "id"), "vertex id");
    const Json& c = field(v, "color");
    require(c.is_string() && (c == "black" || c == "white"), Errc::Parse, "color must be \"black\" or \"white\"");
    x.color = c == "black" ? Color::Black : Color::White;
    x.boundary = 0;
    if (v.contains("boundary") && !v.at("boundary").is_null()) x.boundary = as_id(v.at("boundary"), "boundary index");
    s.vertices.push_back(x);
  }
  for (const auto& e : field(j, "edges")) {
    const Json& ends = field(e, "ends");
    require(ends.is_array() && ends.size() == 2, Errc::Parse, "\"ends\" must list two vertex ids");
    s.edges.push_back({as_id(field(e, "id"), "edge id"), as_id(ends[0], "vertex id"), as_id(ends[1], "vertex id")});
  }
  const Json& rot = field(j, "rotation");
  require(rot.is_object(), Errc::Parse, "\"rotation\" must be an object");
  for (auto it = rot.begin(); it != rot.end(); ++it) {
    std::vector<int> es;
    require(it.value().is_array(), Errc::Parse, "rotation entries must be arrays");
    for (const auto& e : it.value()) es.push_back(as_id(e, "edge id"));
    s.rotation[as_id(Json(it.key()), "vertex id")] = es;
  }
  return s;
}

Json graph_json(const PlabicGraph& g) {
  Json j;
  j["n"] = g.n;
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices) {
    Json x{{"id", v.id}, {"color", v.color == Color::Black ? "black" : "white"}};
    x["boundary"] = v.boundary > 0 ? Json(v.boundary) : Json(nullptr);
    j["vertices"].push_back(x);
  }
  j["edges"] = Json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"id", e.id}, {"ends", {g.vertices[e.a].id, g.vertices[e.b].id}}});
  j["rotation"] = Json::object();
  for (int v = 0; v < g.nv(); ++v) {
    Json es = Json::array();
    for (int e : g.rotation[v]) es.push_back(g.edges[e].id);
    j["rotation"][std::to_string(g.vertices[v].id)] = es;
  }
  return j;
}

ParsedWeights parse_weights(const Json& j, const PlabicGraph& g) {
  const Json& w = field(j, "weights");
  require(w.is_object(), Errc::Parse, "\"weights\" must be an object");
  ParsedWeights out;
  out.q.assign(g.ne(), mpq_class(0));
  out.d.assign(g.ne(), 0.0);
  std::vector<char> seen(g.ne(), 0);
  for (auto it = w.begin(); it != w.end(); ++it) {
    int e = g.edge_index(as_id(Json(it.key()), "edge id"));
    require(e >= 0, Errc::Parse, "weight for unknown edge " + it.key());
    seen[e] = 1;
    const Json& v = it.value();
    if (v.is_number_integer()) {
      out.q[e] = mpq_class(v.get<long>());
      out.d[e] = static_cast<double>(v.get<long>());
    } else if (v.is_string()) {
      mpq_class q;
      if (q.set_str(v.get<std::string>(), 10) != 0) fail(Errc::Parse, "bad rational \"" + v.get<std::string>() + "\"");
      require(q.get_den() != 0, Errc::Parse, "zero denominator");
      q.canonicalize();
      out.q[e] = q;
      out.d[e] = q.get_d();
    } else if (v.is_number_float()) {
      out.exact = false;
      out.d[e] = v.get<double>();
    } else {
      fail(Errc::Parse, "weights must be numbers or \"p/q\" strings");
    }
    require(out.d[e] >= 0 && std::isfinite(out.d[e]), Errc::Parse, "weights must be nonnegative");
  }
  for (int e = 0; e < g.ne(); ++e)
    require(seen[e], Errc::Parse, "missing weight for edge " + std::to_string(g.edges[e].id));
  return out;
}

Json point_json(const ExactPoint& p) {
  Json c = Json::object();
  for (size_t i = 0; i < p.subsets.size(); ++i) c[subset_key(p.subsets[i])] = p.coords[i].get_str();
  return {{"k", p.k}, {"n", p.n}, {"backend", "exact"}, {"coords", c}};
}

Json point_json(const FloatPoint& p) {
  Json c = Json::object();
  for (size_t i = 0; i < p.subsets.size(); ++i) c[subset_key(p.subsets[i])] = p.coords[i];
  return {{"k", p.k}, {"n", p.n}, {"backend", "float"}, {"coords", c}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Errc::Parse, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  return os.str();
}

}  // namespace critgrass
