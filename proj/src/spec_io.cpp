#include "transnn/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "transnn/error.hpp"

namespace transnn {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(where + ": missing field '" + key + "'");
  return *it;
}

std::size_t as_count(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw SpecError(what + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw SpecError(what + " must be a number");
  return v.get<double>();
}

EdgeSpec parse_edge(const json& e, std::size_t n, const std::string& where) {
  if (!e.is_object()) throw SpecError(where + ": edge must be an object");
  EdgeSpec edge;
  const std::size_t src = as_count(require(e, "src", where), where + ".src");
  const std::size_t dst = as_count(require(e, "dst", where), where + ".dst");
  if (src < 1 || src > n || dst < 1 || dst > n)
    throw SpecError(where + ": node index out of range [1, " + std::to_string(n) + "]");
  edge.src = src - 1;
  edge.dst = dst - 1;

  const json& type = require(e, "type", where);
  if (type == "excitatory") {
    edge.type = EdgeType::excitatory;
  } else if (type == "inhibitory") {
    edge.type = EdgeType::inhibitory;
  } else {
    throw SpecError(where + ": unknown edge type tag " + type.dump());
  }

  edge.w = as_number(require(e, "w", where), where + ".w");
  if (auto it = e.find("a"); it != e.end()) {
    if (!it->is_number_integer()) throw SpecError(where + ".a must be an integer");
    edge.a = it->get<std::int64_t>();
  }
  if (auto it = e.find("lambda"); it != e.end()) {
    edge.lambda = as_number(*it, where + ".lambda");
  } else {
    edge.lambda = edge.w * static_cast<double>(edge.a);
  }
  return edge;
}

FrameSpec parse_frame(const json& edges, std::size_t n, const std::string& where) {
  if (!edges.is_array()) throw SpecError(where + ".edges must be an array");
  FrameSpec frame;
  for (std::size_t i = 0; i < edges.size(); ++i)
    frame.edges.push_back(parse_edge(edges[i], n, where + ".edges[" + std::to_string(i) + "]"));
  return frame;
}

json edge_to_json(const EdgeSpec& e) {
  return json{{"src", e.src + 1}, {"dst", e.dst + 1}, {"type", to_string(e.type)},
              {"w", e.w},         {"a", e.a},         {"lambda", e.lambda}};
}

json to_json(const NetworkSpec& spec, bool sort_edges) {
  json frames = json::array();
  for (const auto& f : spec.frames) {
    std::vector<EdgeSpec> edges = f.edges;
    if (sort_edges) {
      std::sort(edges.begin(), edges.end(), [](const EdgeSpec& l, const EdgeSpec& r) {
        return std::tie(l.dst, l.src, l.type) < std::tie(r.dst, r.src, r.type);
      });
    }
    json arr = json::array();
    for (const auto& e : edges) arr.push_back(edge_to_json(e));
    frames.push_back(json{{"edges", std::move(arr)}});
  }
  json doc{{"n", spec.n},
           {"horizon", spec.horizon},
           {"initial_p", spec.initial_p},
           {"frames", std::move(frames)}};
  if (spec.a9_linked) doc["a9_linked"] = true;
  return doc;
}

}  // namespace

NetworkSpec load_spec(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("document must be an object");

  NetworkSpec spec;
  spec.n = as_count(require(doc, "n", "document"), "n");
  spec.horizon = as_count(require(doc, "horizon", "document"), "horizon");
  const json& init = require(doc, "initial_p", "document");
  if (!init.is_array()) throw SpecError("initial_p must be an array");
  for (std::size_t i = 0; i < init.size(); ++i)
    spec.initial_p.push_back(as_number(init[i], "initial_p[" + std::to_string(i) + "]"));
  if (auto it = doc.find("a9_linked"); it != doc.end()) {
    if (!it->is_boolean()) throw SpecError("a9_linked must be a boolean");
    spec.a9_linked = it->get<bool>();
  }

  if (auto it = doc.find("frames"); it != doc.end()) {
    if (!it->is_array()) throw SpecError("frames must be an array");
    for (std::size_t f = 0; f < it->size(); ++f) {
      const std::string where = "frames[" + std::to_string(f) + "]";
      const json& frame = (*it)[f];
      if (!frame.is_object()) throw SpecError(where + " must be an object");
      spec.frames.push_back(parse_frame(require(frame, "edges", where), spec.n, where));
    }
  } else if (auto edges = doc.find("edges"); edges != doc.end()) {
    spec.frames.push_back(parse_frame(*edges, spec.n, "document"));
  } else {
    throw SpecError("document: missing field 'frames'");
  }
  return spec;
}

NetworkSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_spec(buf.str());
}

std::string save_spec(const NetworkSpec& spec) { return to_json(spec, false).dump(2) + "\n"; }

void save_spec_file(const NetworkSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write spec file " + path.string());
  out << save_spec(spec);
}

std::string canonical_document(const NetworkSpec& spec) { return to_json(spec, true).dump(); }

}  // namespace transnn
