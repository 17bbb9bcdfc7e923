#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vdd/graph.hpp"

namespace vdd {

/// Coordinates in which gradients are taken and optimizers step.
///
/// kRaw uses (r, omega, phi) directly. kTrig replaces r by an angle u with
/// left magnitude cos u and right magnitude sin u, which removes the
/// 1/sqrt(1 - r^2) singularity. A graph stores the canonical angle
/// u = acos(r) in [0, pi/2]; other values of u map onto the same state with
/// the sign absorbed into omega or phi (see set_coordinates).
enum class ParamMode { kRaw, kTrig };

ParamMode parse_param_mode(std::string_view name);  // "raw" | "trig"
std::string_view to_string(ParamMode mode);

/// Lower/upper margin for r in raw-mode projections: r in [delta, 1 - delta].
inline constexpr double kRawMargin = 1e-9;

/// "r3", "omega3", "phi3" (raw) or "u3", "omega3", "phi3" (trig), node-id order.
std::vector<std::string> parameter_labels(const VddGraph& graph, ParamMode mode);

/// Resolves a label to its flat index. Negative node numbers count from the
/// last node, so "phi-1" is the phi of the highest-id node.
std::optional<std::size_t> find_parameter(const VddGraph& graph, std::string_view label,
                                          ParamMode mode);

/// Flat coordinates (r or u, omega, phi) per node.
std::vector<double> get_coordinates(const VddGraph& graph, ParamMode mode);

/// Inverse of get_coordinates. In trig mode any real u is accepted: r = |cos u|,
/// with pi added to omega when cos u < 0 and to phi when sin u < 0.
void set_coordinates(VddGraph& graph, std::span<const double> coords, ParamMode mode);

/// d(canonical u)/d(u) for each trig coordinate: +1 or -1 per node, so that a
/// gradient taken at the canonical angle maps back onto an unconstrained u.
std::vector<double> trig_orientation(std::span<const double> coords);

/// Clamps every r coordinate into [kRawMargin, 1 - kRawMargin].
void project_raw(std::span<double> coords);

}  // namespace vdd
