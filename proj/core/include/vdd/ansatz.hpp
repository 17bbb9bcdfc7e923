#pragma once

#include <cstdint>
#include <string_view>

#include "vdd/bits.hpp"
#include "vdd/graph.hpp"
#include "vdd/state.hpp"

namespace vdd {

enum class AnsatzKind { kProduct, kAccordion, kUniversal };

/// "product" | "accordion" | "universal"; throws DomainError otherwise.
AnsatzKind parse_ansatz_kind(std::string_view name);
std::string_view to_string(AnsatzKind kind);

/// How init_params fills node parameters.
struct InitScheme {
  enum class Kind { kUniformRandom, kBalanced, kBasis };

  Kind kind = Kind::kUniformRandom;
  BitString basis;  // only for kBasis
  std::uint64_t seed = 0;

  static InitScheme uniform(std::uint64_t seed) { return {Kind::kUniformRandom, {}, seed}; }
  static InitScheme balanced() { return {Kind::kBalanced, {}, 0}; }
  static InitScheme basis_state(BitString b) { return {Kind::kBasis, std::move(b), 0}; }
};

/// "uniform" | "balanced" | "basis:<bits>".
InitScheme parse_init_scheme(std::string_view text, std::uint64_t seed);

/// One node per level; both edges go to the next level's node. 3n parameters.
VddGraph build_product(int n);

/// Alternating one- and two-node levels (odd levels single). A single node's
/// left/right edges go to the left/right node of the next level; both edges of
/// a paired node go to the next single node. floor(3n/2) nodes.
VddGraph build_accordion(int n);

/// Complete binary tree, 2^(l-1) nodes on level l; n <= 20.
VddGraph build_universal(int n);

VddGraph build_ansatz(AnsatzKind kind, int n);

/// Closed-form node count of build_ansatz(kind, n).
std::size_t ansatz_node_count(AnsatzKind kind, int n);

/// Fills parameters and resets the global phase to 0.
///
/// kUniformRandom draws r ~ U[0,1), omega, phi ~ U[0, 2 pi) node by node in
/// ascending id order, (r, omega, phi) per node. kBalanced sets r = 1/sqrt 2
/// and zero phases. kBasis routes all weight along the path of the basis bits
/// (r in {0, 1}); off-path nodes get r = 1.
VddGraph init_params(VddGraph graph, const InitScheme& scheme);

/// Universal-topology graph reproducing `state` exactly (global phase 0).
/// Splits are conditional marginals; the last level carries the phases.
/// Zero-probability branches get r = 1 and zero phases. n <= 12.
VddGraph encode_state(const StateVector& state);

}  // namespace vdd
