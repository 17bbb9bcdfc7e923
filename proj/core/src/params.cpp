#include "vdd/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "vdd/errors.hpp"

namespace vdd {

ParamMode parse_param_mode(std::string_view name) {
  if (name == "raw") return ParamMode::kRaw;
  if (name == "trig") return ParamMode::kTrig;
  throw DomainError("unknown parameter mode '" + std::string(name) + "'");
}

std::string_view to_string(ParamMode mode) { return mode == ParamMode::kRaw ? "raw" : "trig"; }

std::vector<std::string> parameter_labels(const VddGraph& graph, ParamMode mode) {
  const std::string amp = mode == ParamMode::kRaw ? "r" : "u";
  std::vector<std::string> out;
  out.reserve(graph.parameter_count());
  for (const Node& node : graph.nodes()) {
    const std::string id = std::to_string(node.id);
    out.push_back(amp + id);
    out.push_back("omega" + id);
    out.push_back("phi" + id);
  }
  return out;
}

std::optional<std::size_t> find_parameter(const VddGraph& graph, std::string_view label,
                                          ParamMode mode) {
  const std::string_view amp = mode == ParamMode::kRaw ? "r" : "u";
  std::size_t slot = 0;
  std::string_view rest;
  if (label.starts_with("omega")) {
    slot = 1;
    rest = label.substr(5);
  } else if (label.starts_with("phi")) {
    slot = 2;
    rest = label.substr(3);
  } else if (label.starts_with(amp)) {
    rest = label.substr(amp.size());
  } else {
    return std::nullopt;
  }
  long long number = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), number);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || number == 0) return std::nullopt;
  const auto count = static_cast<long long>(graph.node_count());
  const long long id = number > 0 ? number : count + 1 + number;
  if (id < 1 || id > count) return std::nullopt;
  return static_cast<std::size_t>(3 * (id - 1)) + slot;
}

std::vector<double> get_coordinates(const VddGraph& graph, ParamMode mode) {
  std::vector<double> out = graph.parameters();
  if (mode == ParamMode::kTrig) {
    for (std::size_t i = 0; i < out.size(); i += 3) out[i] = std::acos(std::clamp(out[i], 0.0, 1.0));
  }
  return out;
}

void set_coordinates(VddGraph& graph, std::span<const double> coords, ParamMode mode) {
  if (coords.size() != graph.parameter_count()) {
    throw DomainError("coordinate vector length does not match parameter count");
  }
  if (mode == ParamMode::kRaw) {
    graph.set_parameters(coords);
    return;
  }
  std::vector<double> raw(coords.begin(), coords.end());
  for (std::size_t i = 0; i < raw.size(); i += 3) {
    const double c = std::cos(coords[i]);
    const double s = std::sin(coords[i]);
    raw[i] = std::min(1.0, std::abs(c));
    if (c < 0.0) raw[i + 1] += std::numbers::pi;
    if (s < 0.0) raw[i + 2] += std::numbers::pi;
  }
  graph.set_parameters(raw);
}

std::vector<double> trig_orientation(std::span<const double> coords) {
  std::vector<double> out(coords.size() / 3);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double u = coords[3 * k];
    const bool flip = (std::cos(u) < 0.0) != (std::sin(u) < 0.0);
    out[k] = flip ? -1.0 : 1.0;
  }
  return out;
}

void project_raw(std::span<double> coords) {
  for (std::size_t i = 0; i < coords.size(); i += 3) {
    coords[i] = std::clamp(coords[i], kRawMargin, 1.0 - kRawMargin);
  }
}

}  // namespace vdd
