#include "vdd/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vdd/errors.hpp"
#include "vdd/rng.hpp"

namespace vdd {

namespace {

constexpr int kUniversalMaxQubits = 20;
constexpr int kEncodeMaxQubits = 12;

void require_qubits(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be at least 1");
}

}  // namespace

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "product") return AnsatzKind::kProduct;
  if (name == "accordion") return AnsatzKind::kAccordion;
  if (name == "universal") return AnsatzKind::kUniversal;
  throw DomainError("unknown ansatz '" + std::string(name) + "'");
}

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::kProduct: return "product";
    case AnsatzKind::kAccordion: return "accordion";
    case AnsatzKind::kUniversal: return "universal";
  }
  return "unknown";
}

InitScheme parse_init_scheme(std::string_view text, std::uint64_t seed) {
  if (text == "uniform") return InitScheme::uniform(seed);
  if (text == "balanced") return InitScheme::balanced();
  constexpr std::string_view prefix = "basis:";
  if (text.substr(0, prefix.size()) == prefix) {
    return InitScheme::basis_state(BitString::from_string(text.substr(prefix.size())));
  }
  throw DomainError("unknown init scheme '" + std::string(text) + "'");
}

VddGraph build_product(int n) {
  require_qubits(n, "product ansatz");
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (int level = 1; level <= n; ++level) {
    const NodeId next = level < n ? level + 1 : kTerminal;
    nodes.push_back({level, level, {}, next, next});
  }
  return VddGraph(n, 1, std::move(nodes));
}

VddGraph build_accordion(int n) {
  require_qubits(n, "accordion ansatz");
  std::vector<Node> nodes;
  nodes.reserve(ansatz_node_count(AnsatzKind::kAccordion, n));
  NodeId next_id = 1;
  for (int level = 1; level <= n; ++level) {
    const bool single = level % 2 == 1;
    if (single) {
      const NodeId id = next_id++;
      // The two children of the next (paired) level get the next two ids.
      const NodeId left = level < n ? id + 1 : kTerminal;
      const NodeId right = level < n ? id + 2 : kTerminal;
      nodes.push_back({id, level, {}, left, right});
    } else {
      const NodeId a = next_id++;
      const NodeId b = next_id++;
      const NodeId child = level < n ? b + 1 : kTerminal;
      nodes.push_back({a, level, {}, child, child});
      nodes.push_back({b, level, {}, child, child});
    }
  }
  return VddGraph(n, 1, std::move(nodes));
}

VddGraph build_universal(int n) {
  require_qubits(n, "universal ansatz");
  if (n > kUniversalMaxQubits) {
    throw DomainError("universal ansatz supports n <= " + std::to_string(kUniversalMaxQubits));
  }
  const std::size_t count = (std::size_t{1} << n) - 1;
  std::vector<Node> nodes;
  nodes.reserve(count);
  for (int level = 1; level <= n; ++level) {
    const NodeId first = NodeId{1} << (level - 1);
    for (NodeId k = 0; k < first; ++k) {
      const NodeId id = first + k;
      const NodeId c0 = level < n ? 2 * id : kTerminal;
      const NodeId c1 = level < n ? 2 * id + 1 : kTerminal;
      nodes.push_back({id, level, {}, c0, c1});
    }
  }
  return VddGraph(n, 1, std::move(nodes));
}

VddGraph build_ansatz(AnsatzKind kind, int n) {
  switch (kind) {
    case AnsatzKind::kProduct: return build_product(n);
    case AnsatzKind::kAccordion: return build_accordion(n);
    case AnsatzKind::kUniversal: return build_universal(n);
  }
  throw DomainError("unknown ansatz kind");
}

std::size_t ansatz_node_count(AnsatzKind kind, int n) {
  require_qubits(n, "ansatz");
  switch (kind) {
    case AnsatzKind::kProduct: return static_cast<std::size_t>(n);
    case AnsatzKind::kAccordion: return static_cast<std::size_t>(3 * n / 2);
    case AnsatzKind::kUniversal: return (std::size_t{1} << n) - 1;
  }
  return 0;
}

VddGraph init_params(VddGraph graph, const InitScheme& scheme) {
  graph.set_global_phase(0.0);
  const auto node_ids = [&graph] {
    std::vector<NodeId> ids;
    for (const Node& node : graph.nodes()) ids.push_back(node.id);
    return ids;
  }();

  switch (scheme.kind) {
    case InitScheme::Kind::kUniformRandom: {
      Rng rng(scheme.seed);
      for (NodeId id : node_ids) {
        ParamTriple p;
        p.r = rng.uniform();
        p.omega = rng.angle();
        p.phi = rng.angle();
        graph.set_params(id, p);
      }
      break;
    }
    case InitScheme::Kind::kBalanced: {
      for (NodeId id : node_ids) graph.set_params(id, {std::numbers::sqrt2 / 2.0, 0.0, 0.0});
      break;
    }
    case InitScheme::Kind::kBasis: {
      if (scheme.basis.size() != graph.num_qubits()) {
        throw DomainError("basis bit string length does not match num_qubits");
      }
      for (NodeId id : node_ids) graph.set_params(id, {1.0, 0.0, 0.0});
      NodeId current = graph.root_child();
      for (int level = 1; level <= graph.num_qubits(); ++level) {
        const Node& node = graph.node(current);
        const bool one = scheme.basis[level - 1] != 0;
        graph.set_params(current, {one ? 0.0 : 1.0, 0.0, 0.0});
        current = one ? node.child1 : node.child0;
      }
      break;
    }
  }
  return graph;
}

VddGraph encode_state(const StateVector& state) {
  const int n = state.num_qubits;
  require_qubits(n, "encode_state");
  if (n > kEncodeMaxQubits) {
    throw CapacityError("encode_state supports n <= " + std::to_string(kEncodeMaxQubits));
  }
  const std::size_t dim = std::size_t{1} << n;
  if (state.amps.size() != dim) throw DomainError("state vector length does not match 2^n");
  if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
    throw DomainError("encode_state requires a normalized state");
  }

  VddGraph graph = build_universal(n);

  // prob[level][p]: marginal probability of the (level)-bit prefix p.
  std::vector<std::vector<double>> prob(static_cast<std::size_t>(n) + 1);
  prob[static_cast<std::size_t>(n)].resize(dim);
  for (std::size_t i = 0; i < dim; ++i) prob[static_cast<std::size_t>(n)][i] = std::norm(state.amps[i]);
  for (int len = n - 1; len >= 0; --len) {
    auto& cur = prob[static_cast<std::size_t>(len)];
    const auto& finer = prob[static_cast<std::size_t>(len) + 1];
    cur.resize(std::size_t{1} << len);
    for (std::size_t p = 0; p < cur.size(); ++p) cur[p] = finer[2 * p] + finer[2 * p + 1];
  }

  for (int level = 1; level <= n; ++level) {
    const auto& parent = prob[static_cast<std::size_t>(level) - 1];
    const auto& child = prob[static_cast<std::size_t>(level)];
    const NodeId first = NodeId{1} << (level - 1);
    for (std::size_t p = 0; p < parent.size(); ++p) {
      const NodeId id = first + static_cast<NodeId>(p);
      ParamTriple params{1.0, 0.0, 0.0};
      if (parent[p] > 0.0) {
        if (level < n) {
          params.r = std::min(1.0, std::sqrt(child[2 * p] / parent[p]));
        } else {
          // Earlier factors are real and positive with product sqrt(parent[p]).
          const double scale = std::sqrt(parent[p]);
          const cplx a0 = state.amps[2 * p];
          const cplx a1 = state.amps[2 * p + 1];
          params.r = std::min(1.0, std::abs(a0) / scale);
          params.omega = std::abs(a0) > 0.0 ? std::arg(a0) : 0.0;
          params.phi = std::abs(a1) > 0.0 ? std::arg(a1) : 0.0;
        }
      }
      graph.set_params(id, params);
    }
  }
  return graph;
}

}  // namespace vdd
