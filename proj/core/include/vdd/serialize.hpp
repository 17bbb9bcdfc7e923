#pragma once

#include <string>
#include <string_view>

#include "vdd/graph.hpp"

namespace vdd {

inline constexpr int kVddFormatVersion = 1;

/// JSON document with keys version, num_qubits, global_phase, root_child and
/// nodes[{id, level, r, omega, phi, child0, child1}]. Children are integer
/// ids or the string "terminal". Reals are written with 17 significant digits.
std::string serialize(const VddGraph& graph);

/// Parses and validates. Throws ParseError naming the offending field,
/// including structural violations found by validate().
VddGraph deserialize(std::string_view text);

/// Parses the document schema only; structural invariants are left for
/// validate(). Used by tooling that reports diagnostics.
VddGraph deserialize_unchecked(std::string_view text);

}  // namespace vdd
