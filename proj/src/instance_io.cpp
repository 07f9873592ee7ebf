#include "ltss/instance_io.hpp"

#include <algorithm>
#include <fstream>

namespace ltss::io {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

int integer(const json& value, const std::string& what) {
  if (!value.is_number_integer()) throw InputError(what + " must be an integer");
  return value.get<int>();
}

std::vector<int> integer_list(const json& value, const std::string& what) {
  if (!value.is_array()) throw InputError(what + " must be a list");
  std::vector<int> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(integer(value[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

LoadedInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");
  static const char* const kKnown[] = {"n", "edges", "thresholds", "lambda", "budget", "alpha", "targets", "kexpr"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw InputError("unknown field '" + key + "'");
    }
  }

  const int n = integer(field(doc, "n"), "n");
  if (n < 0) throw InputError("n must be non-negative");
  const json& edge_list = field(doc, "edges");
  if (!edge_list.is_array()) throw InputError("edges must be a list");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const auto pair = integer_list(edge_list[i], "edges[" + std::to_string(i) + "]");
    if (pair.size() != 2) throw InputError("edges[" + std::to_string(i) + "] must have two endpoints");
    edges.emplace_back(pair[0], pair[1]);
  }

  LoadedInstance out;
  Instance& inst = out.instance;
  try {
    inst.graph = Graph(n, edges);
    inst.thresholds = ThresholdMap(integer_list(field(doc, "thresholds"), "thresholds"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  inst.lambda = integer(field(doc, "lambda"), "lambda");
  if (doc.contains("budget")) inst.budget = integer(doc["budget"], "budget");
  if (doc.contains("alpha")) inst.requirement = integer(doc["alpha"], "alpha");
  if (doc.contains("targets")) inst.targets = integer_list(doc["targets"], "targets");
  try {
    validate(inst);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  if (doc.contains("kexpr")) {
    const json& text = doc["kexpr"];
    if (!text.is_string()) throw InputError("kexpr must be a string");
    try {
      out.expression = kexpr::parse(text.get<std::string>());
    } catch (const kexpr::KExprError& e) {
      throw InputError(std::string("kexpr: ") + e.what());
    }
    if (out.expression->leaf_count() != n) {
      throw InputError("kexpr has " + std::to_string(out.expression->leaf_count()) + " vertices, expected " +
                       std::to_string(n));
    }
    if (!(kexpr::evaluate(*out.expression).graph == inst.graph)) {
      throw InputError("kexpr evaluates to a different graph than the edge list");
    }
  }
  return out;
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

json to_json(const Instance& instance, const std::optional<kexpr::KExpr>& expression) {
  json doc;
  doc["n"] = instance.graph.vertex_count();
  json edges = json::array();
  for (auto [u, v] : instance.graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  doc["thresholds"] = std::vector<int>(instance.thresholds.values().begin(), instance.thresholds.values().end());
  doc["lambda"] = instance.lambda;
  if (instance.budget) doc["budget"] = *instance.budget;
  if (instance.requirement) doc["alpha"] = *instance.requirement;
  if (instance.targets) doc["targets"] = *instance.targets;
  if (expression) doc["kexpr"] = kexpr::format(*expression);
  return doc;
}

}  // namespace ltss::io
