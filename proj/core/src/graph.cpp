#include "vdd/graph.hpp"

#include <cmath>
#include <deque>

#include "vdd/errors.hpp"

namespace vdd {

namespace {

void check_r(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("r out of range [0, 1]: " + std::to_string(r));
  }
}

const Node& next_node(const VddGraph& graph, NodeId id, int level) {
  if (!graph.contains(id)) {
    throw DomainError("path leaves the graph before level " + std::to_string(level));
  }
  return graph.node(id);
}

}  // namespace

EdgeAmplitudes edge_amplitudes(const ParamTriple& p) {
  check_r(p.r);
  const double right_mod = std::sqrt((1.0 - p.r) * (1.0 + p.r));
  return {std::polar(p.r, p.omega), std::polar(right_mod, p.phi)};
}

VddGraph::VddGraph(int num_qubits, NodeId root_child, std::vector<Node> nodes,
                   double global_phase)
    : num_qubits_(num_qubits),
      root_child_(root_child),
      global_phase_(global_phase),
      nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != static_cast<NodeId>(i + 1)) {
      throw DomainError("node ids must be 1..N in storage order");
    }
  }
}

const Node& VddGraph::node(NodeId id) const {
  if (!contains(id)) throw DomainError("unknown node id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id - 1)];
}

void VddGraph::set_params(NodeId id, const ParamTriple& params) {
  if (!contains(id)) throw DomainError("unknown node id " + std::to_string(id));
  check_r(params.r);
  nodes_[static_cast<std::size_t>(id - 1)].params = params;
}

std::vector<double> VddGraph::parameters() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const Node& n : nodes_) {
    out.push_back(n.params.r);
    out.push_back(n.params.omega);
    out.push_back(n.params.phi);
  }
  return out;
}

void VddGraph::set_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw DomainError("parameter vector length " + std::to_string(values.size()) +
                      " does not match " + std::to_string(parameter_count()));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) check_r(values[3 * i]);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i].params = {values[3 * i], values[3 * i + 1], values[3 * i + 2]};
  }
}

cplx amplitude(const VddGraph& graph, const BitString& bits) {
  if (bits.size() != graph.num_qubits()) {
    throw DomainError("bit string length " + std::to_string(bits.size()) +
                      " does not match num_qubits " + std::to_string(graph.num_qubits()));
  }
  cplx value = std::polar(1.0, graph.global_phase());
  NodeId current = graph.root_child();
  for (int level = 1; level <= graph.num_qubits(); ++level) {
    const Node& node = next_node(graph, current, level);
    const EdgeAmplitudes e = edge_amplitudes(node.params);
    const bool one = bits[level - 1] != 0;
    value *= one ? e.right : e.left;
    current = one ? node.child1 : node.child0;
  }
  return value;
}

cplx amplitude(const VddGraph& graph, std::uint64_t index) {
  const int n = graph.num_qubits();
  if (n > 64) throw DomainError("packed index addressing supports at most 64 qubits");
  cplx value = std::polar(1.0, graph.global_phase());
  NodeId current = graph.root_child();
  for (int level = 1; level <= n; ++level) {
    const Node& node = next_node(graph, current, level);
    const EdgeAmplitudes e = edge_amplitudes(node.params);
    const bool one = bit_at(index, level, n) != 0;
    value *= one ? e.right : e.left;
    current = one ? node.child1 : node.child0;
  }
  return value;
}

std::vector<NodeId> path_nodes(const VddGraph& graph, std::uint64_t index) {
  const int n = graph.num_qubits();
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(n));
  NodeId current = graph.root_child();
  for (int level = 1; level <= n; ++level) {
    const Node& node = next_node(graph, current, level);
    out.push_back(current);
    current = bit_at(index, level, n) ? node.child1 : node.child0;
  }
  return out;
}

std::vector<Diagnostic> validate(const VddGraph& graph) {
  std::vector<Diagnostic> out;
  auto report = [&out](std::string code, NodeId node, std::string message) {
    out.push_back({std::move(code), node, std::move(message)});
  };
  const int n = graph.num_qubits();
  if (n < 1) report("num_qubits", kTerminal, "num_qubits must be at least 1");

  if (!graph.contains(graph.root_child())) {
    report("root child", kTerminal, "root edge does not point to an existing node");
  } else if (graph.node(graph.root_child()).level != 1) {
    report("root child", graph.root_child(),
           "root edge must point to a level-1 node, got node " +
               std::to_string(graph.root_child()));
  }

  int level_one_count = 0;
  for (const Node& node : graph.nodes()) {
    const std::string id = std::to_string(node.id);
    if (node.level == 1) ++level_one_count;
    if (node.level < 1 || node.level > n) {
      report("level range", node.id, "level out of range at node " + id);
      continue;
    }
    if (!(node.params.r >= 0.0 && node.params.r <= 1.0)) {
      report("r range", node.id, "r out of range at node " + id);
    }
    if (!std::isfinite(node.params.omega) || !std::isfinite(node.params.phi)) {
      report("phase", node.id, "non-finite phase at node " + id);
    }
    for (NodeId child : {node.child0, node.child1}) {
      if (node.level == n) {
        if (child != kTerminal) {
          report("missing terminal", node.id, "last-level node must point to terminal at node " + id);
        }
        continue;
      }
      if (child == kTerminal) {
        report("early terminal", node.id, "terminal reached before last level at node " + id);
      } else if (!graph.contains(child)) {
        report("dangling child", node.id, "dangling child at node " + id);
      } else {
        const int child_level = graph.node(child).level;
        if (child_level > node.level + 1) {
          report("level skip", node.id, "level skip at node " + id);
        } else if (child_level <= node.level) {
          report("level order", node.id, "child level does not increase at node " + id);
        }
      }
    }
  }
  if (level_one_count > 1) {
    report("root out-degree", kTerminal,
           "root out-degree: " + std::to_string(level_one_count) +
               " level-1 nodes require more than one root edge");
  }

  // Reachability from the root edge.
  if (graph.contains(graph.root_child())) {
    std::vector<char> seen(graph.node_count() + 1, 0);
    std::deque<NodeId> queue{graph.root_child()};
    seen[static_cast<std::size_t>(graph.root_child())] = 1;
    while (!queue.empty()) {
      const Node& node = graph.node(queue.front());
      queue.pop_front();
      for (NodeId child : {node.child0, node.child1}) {
        if (graph.contains(child) && !seen[static_cast<std::size_t>(child)]) {
          seen[static_cast<std::size_t>(child)] = 1;
          queue.push_back(child);
        }
      }
    }
    for (const Node& node : graph.nodes()) {
      if (!seen[static_cast<std::size_t>(node.id)]) {
        report("unreachable", node.id, "unreachable node " + std::to_string(node.id));
      }
    }
  }
  return out;
}

std::vector<NodeId> level_nodes(const VddGraph& graph, int level) {
  std::vector<NodeId> out;
  for (const Node& node : graph.nodes()) {
    if (node.level == level) out.push_back(node.id);
  }
  return out;
}

}  // namespace vdd
