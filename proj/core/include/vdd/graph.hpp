#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vdd/bits.hpp"

namespace vdd {

using cplx = std::complex<double>;

/// Per-node edge parameters. The left (b = 0) edge carries r e^{i omega}, the
/// right (b = 1) edge carries sqrt(1 - r^2) e^{i phi}.
struct ParamTriple {
  double r = 1.0;
  double omega = 0.0;
  double phi = 0.0;

  friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

struct EdgeAmplitudes {
  cplx left;
  cplx right;
};

/// Throws DomainError when r is outside [0, 1].
EdgeAmplitudes edge_amplitudes(const ParamTriple& params);

using NodeId = std::int32_t;

/// Sentinel child id for the terminal node. Real nodes are numbered from 1.
inline constexpr NodeId kTerminal = 0;

struct Node {
  NodeId id = 0;
  int level = 0;
  ParamTriple params;
  NodeId child0 = kTerminal;
  NodeId child1 = kTerminal;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Leveled binary multigraph whose root-to-terminal path products are the
/// amplitudes of an n-qubit state.
///
/// Node ids must be exactly 1..N in storage order; every other structural rule
/// is checked by validate(), so malformed graphs can be built and diagnosed.
class VddGraph {
 public:
  VddGraph() = default;
  VddGraph(int num_qubits, NodeId root_child, std::vector<Node> nodes,
           double global_phase = 0.0);

  int num_qubits() const noexcept { return num_qubits_; }
  NodeId root_child() const noexcept { return root_child_; }
  double global_phase() const noexcept { return global_phase_; }
  void set_global_phase(double phase) noexcept { global_phase_ = phase; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  bool contains(NodeId id) const noexcept {
    return id >= 1 && static_cast<std::size_t>(id) <= nodes_.size();
  }
  const Node& node(NodeId id) const;

  const ParamTriple& params(NodeId id) const { return node(id).params; }
  /// Throws DomainError when r is outside [0, 1].
  void set_params(NodeId id, const ParamTriple& params);

  /// Trainable parameter count, 3 per node. The global phase is not included.
  std::size_t parameter_count() const noexcept { return 3 * nodes_.size(); }
  /// Flat (r1, omega1, phi1, r2, ...) in node-id order.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> values);

  friend bool operator==(const VddGraph&, const VddGraph&) = default;

 private:
  int num_qubits_ = 0;
  NodeId root_child_ = kTerminal;
  double global_phase_ = 0.0;
  std::vector<Node> nodes_;
};

/// psi(b): global phase times the product of the edge amplitudes selected by
/// b1, b2, ... starting at the root child.
cplx amplitude(const VddGraph& graph, const BitString& bits);
/// Same, addressing b by its packed index (qubit 1 = most significant bit).
cplx amplitude(const VddGraph& graph, std::uint64_t index);

/// Node ids visited by b, one per level.
std::vector<NodeId> path_nodes(const VddGraph& graph, std::uint64_t index);

struct Diagnostic {
  std::string code;  // e.g. "level skip", "root out-degree"
  NodeId node = kTerminal;
  std::string message;
};

/// Empty iff the graph satisfies every structural invariant.
std::vector<Diagnostic> validate(const VddGraph& graph);

/// Ids of the nodes at `level`, ascending.
std::vector<NodeId> level_nodes(const VddGraph& graph, int level);

}  // namespace vdd
