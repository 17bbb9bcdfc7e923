#include "vdd/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "vdd/errors.hpp"

namespace vdd {

namespace {

using nlohmann::json;

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string child_text(NodeId id) {
  return id == kTerminal ? std::string("\"terminal\"") : std::to_string(id);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(where + key, "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + key, "missing required key");
  return *it;
}

double read_real(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + key, "expected a number");
  return v.get<double>();
}

long long read_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + key, "expected an integer");
  return v.get<long long>();
}

NodeId read_child(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (v.is_string()) {
    if (v.get<std::string>() != "terminal") {
      throw ParseError(where + key, "child must be an integer id or \"terminal\"");
    }
    return kTerminal;
  }
  if (!v.is_number_integer()) {
    throw ParseError(where + key, "child must be an integer id or \"terminal\"");
  }
  const long long id = v.get<long long>();
  if (id < 1) throw ParseError(where + key, "child id must be positive");
  return static_cast<NodeId>(id);
}

}  // namespace

std::string serialize(const VddGraph& graph) {
  std::string out;
  out += "{\n";
  out += "  \"version\": " + std::to_string(kVddFormatVersion) + ",\n";
  out += "  \"num_qubits\": " + std::to_string(graph.num_qubits()) + ",\n";
  out += "  \"global_phase\": " + real17(graph.global_phase()) + ",\n";
  out += "  \"root_child\": " + child_text(graph.root_child()) + ",\n";
  out += "  \"nodes\": [";
  bool first = true;
  for (const Node& node : graph.nodes()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"id\": " + std::to_string(node.id) + ", \"level\": " + std::to_string(node.level) +
           ", \"r\": " + real17(node.params.r) + ", \"omega\": " + real17(node.params.omega) +
           ", \"phi\": " + real17(node.params.phi) + ", \"child0\": " + child_text(node.child0) +
           ", \"child1\": " + child_text(node.child1) + "}";
  }
  out += graph.node_count() ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

VddGraph deserialize_unchecked(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "document must be an object");
  reject_unknown(doc, {"version", "num_qubits", "global_phase", "root_child", "nodes"}, "");

  const long long version = read_int(doc, "version", "");
  if (version != kVddFormatVersion) {
    throw ParseError("version", "unknown version " + std::to_string(version));
  }
  const long long n = read_int(doc, "num_qubits", "");
  if (n < 1 || n > 64) throw ParseError("num_qubits", "must be in 1..64");
  const double global_phase = read_real(doc, "global_phase", "");
  if (!std::isfinite(global_phase)) throw ParseError("global_phase", "must be finite");
  const NodeId root_child = read_child(doc, "root_child", "");

  const json& nodes_json = require(doc, "nodes", "");
  if (!nodes_json.is_array()) throw ParseError("nodes", "expected an array");

  std::vector<Node> nodes(nodes_json.size());
  std::vector<char> filled(nodes_json.size(), 0);
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const json& item = nodes_json[i];
    const std::string where = "nodes[" + std::to_string(i) + "].";
    if (!item.is_object()) throw ParseError("nodes[" + std::to_string(i) + "]", "expected an object");
    reject_unknown(item, {"id", "level", "r", "omega", "phi", "child0", "child1"}, where);
    const long long id = read_int(item, "id", where);
    if (id < 1 || static_cast<std::size_t>(id) > nodes.size()) {
      throw ParseError(where + "id", "ids must be exactly 1..N");
    }
    const auto slot = static_cast<std::size_t>(id - 1);
    if (filled[slot]) throw ParseError(where + "id", "duplicate id " + std::to_string(id));
    filled[slot] = 1;

    Node node;
    node.id = static_cast<NodeId>(id);
    node.level = static_cast<int>(read_int(item, "level", where));
    node.params.r = read_real(item, "r", where);
    if (!(node.params.r >= 0.0 && node.params.r <= 1.0)) {
      throw ParseError(where + "r", "r out of range");
    }
    node.params.omega = read_real(item, "omega", where);
    node.params.phi = read_real(item, "phi", where);
    node.child0 = read_child(item, "child0", where);
    node.child1 = read_child(item, "child1", where);
    nodes[slot] = node;
  }
  return VddGraph(static_cast<int>(n), root_child, std::move(nodes), global_phase);
}

VddGraph deserialize(std::string_view text) {
  VddGraph graph = deserialize_unchecked(text);
  const auto diagnostics = validate(graph);
  if (!diagnostics.empty()) {
    const Diagnostic& d = diagnostics.front();
    const std::string field =
        d.node == kTerminal ? std::string("root_child") : "node " + std::to_string(d.node);
    throw ParseError(field, d.message);
  }
  return graph;
}

}  // namespace vdd
