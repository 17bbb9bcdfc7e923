#include "vdd/exact.hpp"

#include <algorithm>
#include <cmath>

#include "vdd/errors.hpp"

namespace vdd {

namespace {

void require_capacity(const VddGraph& graph) {
  if (graph.num_qubits() < 1) throw DomainError("graph has no qubits");
  if (graph.num_qubits() > kStateVectorMaxQubits) {
    throw CapacityError("dense state vectors support n <= " +
                        std::to_string(kStateVectorMaxQubits) + "; use VMC mode");
  }
}

std::vector<EdgeAmplitudes> edge_table(const VddGraph& graph) {
  std::vector<EdgeAmplitudes> out;
  out.reserve(graph.node_count());
  for (const Node& node : graph.nodes()) out.push_back(edge_amplitudes(node.params));
  return out;
}

const EdgeAmplitudes& edges_of(const std::vector<EdgeAmplitudes>& table, NodeId id) {
  return table[static_cast<std::size_t>(id - 1)];
}

/// Prefix amplitudes per level. prefix[l-1][p] is the amplitude accumulated
/// before the level-l edge for the (l-1)-bit prefix p; node[l-1][p] is the
/// level-l node that prefix reaches. `amps` holds the full products.
struct Propagation {
  std::vector<std::vector<cplx>> prefix;
  std::vector<std::vector<NodeId>> node;
  std::vector<cplx> amps;
};

Propagation propagate(const VddGraph& graph, const std::vector<EdgeAmplitudes>& table,
                      bool keep_levels) {
  require_capacity(graph);
  const int n = graph.num_qubits();
  Propagation out;
  std::vector<cplx> cur{std::polar(1.0, graph.global_phase())};
  std::vector<NodeId> cur_node{graph.root_child()};
  for (int level = 1; level <= n; ++level) {
    std::vector<cplx> next(cur.size() * 2);
    std::vector<NodeId> next_node(level < n ? cur.size() * 2 : 0);
    for (std::size_t p = 0; p < cur.size(); ++p) {
      const NodeId id = cur_node[p];
      if (!graph.contains(id)) throw DomainError("graph does not validate: broken path");
      const Node& nd = graph.node(id);
      const EdgeAmplitudes& e = edges_of(table, id);
      next[2 * p] = cur[p] * e.left;
      next[2 * p + 1] = cur[p] * e.right;
      if (level < n) {
        next_node[2 * p] = nd.child0;
        next_node[2 * p + 1] = nd.child1;
      }
    }
    if (keep_levels) {
      out.prefix.push_back(std::move(cur));
      out.node.push_back(std::move(cur_node));
    }
    cur = std::move(next);
    cur_node = std::move(next_node);
  }
  out.amps = std::move(cur);
  return out;
}

/// Derivatives of the left/right edge amplitude with respect to the amplitude
/// coordinate (r or u).
EdgeAmplitudes amplitude_derivatives(const ParamTriple& p, ParamMode mode) {
  const double s = std::sqrt((1.0 - p.r) * (1.0 + p.r));
  if (mode == ParamMode::kTrig) {
    return {std::polar(-s, p.omega), std::polar(p.r, p.phi)};
  }
  const double r = std::clamp(p.r, kRawMargin, 1.0 - kRawMargin);
  const double sc = std::sqrt((1.0 - r) * (1.0 + r));
  return {std::polar(1.0, p.omega), std::polar(-r / sc, p.phi)};
}

GradientVector make_gradient(const VddGraph& graph, ParamMode mode) {
  GradientVector g;
  g.mode = mode;
  g.entries.assign(graph.parameter_count(), 0.0);
  g.labels = parameter_labels(graph, mode);
  if (mode == ParamMode::kRaw) {
    for (const Node& node : graph.nodes()) {
      if (node.params.r == 0.0 || node.params.r == 1.0) {
        g.singular_labels.push_back("r" + std::to_string(node.id));
      }
    }
  }
  return g;
}

GradientVector pullback(const VddGraph& graph, const std::vector<EdgeAmplitudes>& table,
                        const Propagation& prop, std::span<const cplx> cotangent, ParamMode mode) {
  const int n = graph.num_qubits();
  if (cotangent.size() != prop.amps.size()) throw DomainError("cotangent length must be 2^n");
  GradientVector grad = make_gradient(graph, mode);

  std::vector<EdgeAmplitudes> dtable;
  dtable.reserve(graph.node_count());
  for (const Node& node : graph.nodes()) dtable.push_back(amplitude_derivatives(node.params, mode));

  std::vector<cplx> suffix(cotangent.begin(), cotangent.end());
  const cplx i_unit{0.0, 1.0};
  for (int level = n; level >= 1; --level) {
    const auto& prefix = prop.prefix[static_cast<std::size_t>(level - 1)];
    const auto& node_at = prop.node[static_cast<std::size_t>(level - 1)];
    std::vector<cplx> folded(prefix.size());
    for (std::size_t p = 0; p < prefix.size(); ++p) {
      const NodeId id = node_at[p];
      const EdgeAmplitudes& e = edges_of(table, id);
      const EdgeAmplitudes& d = edges_of(dtable, id);
      const cplx s0 = suffix[2 * p];
      const cplx s1 = suffix[2 * p + 1];
      const cplx t0 = std::conj(prefix[p]) * s0;
      const cplx t1 = std::conj(prefix[p]) * s1;
      const auto base = 3 * static_cast<std::size_t>(id - 1);
      grad.entries[base] += (std::conj(d.left) * t0 + std::conj(d.right) * t1).real();
      grad.entries[base + 1] += (std::conj(i_unit * e.left) * t0).real();
      grad.entries[base + 2] += (std::conj(i_unit * e.right) * t1).real();
      folded[p] = std::conj(e.left) * s0 + std::conj(e.right) * s1;
    }
    suffix = std::move(folded);
  }
  return grad;
}

}  // namespace

double GradientVector::at(std::string_view label) const {
  const std::size_t node_count = entries.size() / 3;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return entries[i];
  }
  // Negative alias: "<name>-k" is the k-th node from the end.
  const auto dash = label.find('-');
  if (dash != std::string_view::npos && dash > 0) {
    const std::string name(label.substr(0, dash));
    const long k = std::stol(std::string(label.substr(dash + 1)));
    if (k >= 1 && static_cast<std::size_t>(k) <= node_count) {
      return at(name + std::to_string(node_count + 1 - static_cast<std::size_t>(k)));
    }
  }
  throw DomainError("no gradient entry labelled '" + std::string(label) + "'");
}

double GradientVector::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries) m = std::max(m, std::abs(v));
  return m;
}

double GradientVector::norm() const noexcept {
  double s = 0.0;
  for (double v : entries) s += v * v;
  return std::sqrt(s);
}

StateVector to_state_vector(const VddGraph& graph) {
  const auto table = edge_table(graph);
  Propagation prop = propagate(graph, table, false);
  return {graph.num_qubits(), std::move(prop.amps)};
}

double exact_energy(const VddGraph& graph, const PauliHamiltonian& h) {
  if (h.num_qubits() != graph.num_qubits()) throw DomainError("Hamiltonian size does not match graph");
  return expectation(h, to_state_vector(graph));
}

EnergyGradient exact_energy_and_gradient(const VddGraph& graph, const PauliHamiltonian& h,
                                         ParamMode mode) {
  if (h.num_qubits() != graph.num_qubits()) throw DomainError("Hamiltonian size does not match graph");
  const auto table = edge_table(graph);
  const Propagation prop = propagate(graph, table, true);
  const StateVector psi{graph.num_qubits(), prop.amps};
  const StateVector hpsi = h.apply(psi);

  cplx overlap = 0.0;
  for (std::size_t i = 0; i < psi.amps.size(); ++i) overlap += std::conj(psi.amps[i]) * hpsi.amps[i];

  EnergyGradient out;
  out.energy = overlap.real();
  out.global_phase_derivative = 2.0 * overlap.imag();
  out.gradient = pullback(graph, table, prop, hpsi.amps, mode);
  for (double& v : out.gradient.entries) v *= 2.0;
  return out;
}

GradientVector exact_gradient(const VddGraph& graph, const PauliHamiltonian& h, ParamMode mode) {
  return exact_energy_and_gradient(graph, h, mode).gradient;
}

GradientVector state_pullback(const VddGraph& graph, std::span<const cplx> cotangent,
                              ParamMode mode) {
  const auto table = edge_table(graph);
  const Propagation prop = propagate(graph, table, true);
  return pullback(graph, table, prop, cotangent, mode);
}

GradientVector finite_difference(const VddGraph& graph, const PauliHamiltonian& h, double step,
                                 ParamMode mode) {
  if (!(step >= 1e-8 && step <= 1e-3)) throw DomainError("finite-difference step must be in [1e-8, 1e-3]");
  GradientVector grad = make_gradient(graph, mode);
  grad.singular_labels.clear();
  const std::vector<double> base = get_coordinates(graph, mode);
  VddGraph probe = graph;
  std::vector<double> coords = base;
  for (std::size_t j = 0; j < base.size(); ++j) {
    double lo = base[j] - step;
    double hi = base[j] + step;
    if (mode == ParamMode::kRaw && j % 3 == 0) {
      lo = std::max(lo, 0.0);
      hi = std::min(hi, 1.0);
    }
    coords[j] = hi;
    set_coordinates(probe, coords, mode);
    const double e_hi = exact_energy(probe, h);
    coords[j] = lo;
    set_coordinates(probe, coords, mode);
    const double e_lo = exact_energy(probe, h);
    coords[j] = base[j];
    grad.entries[j] = (e_hi - e_lo) / (hi - lo);
  }
  return grad;
}

PathProbability path_probability(const VddGraph& graph, std::uint64_t index, ParamMode mode) {
  const int n = graph.num_qubits();
  const std::vector<NodeId> path = path_nodes(graph, index);
  std::vector<double> weight(static_cast<std::size_t>(n));
  std::vector<double> dweight(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    const double r = graph.params(path[static_cast<std::size_t>(l - 1)]).r;
    const bool one = bit_at(index, l, n) != 0;
    weight[static_cast<std::size_t>(l - 1)] = one ? (1.0 - r) * (1.0 + r) : r * r;
    double d = one ? -2.0 * r : 2.0 * r;
    if (mode == ParamMode::kTrig) d = (one ? 2.0 : -2.0) * r * std::sqrt((1.0 - r) * (1.0 + r));
    dweight[static_cast<std::size_t>(l - 1)] = d;
  }
  // Products of all other weights, without division.
  std::vector<double> before(static_cast<std::size_t>(n) + 1, 1.0);
  for (int l = 0; l < n; ++l) before[static_cast<std::size_t>(l) + 1] = before[static_cast<std::size_t>(l)] * weight[static_cast<std::size_t>(l)];
  PathProbability out;
  out.probability = before[static_cast<std::size_t>(n)];
  double after = 1.0;
  out.gradient.resize(static_cast<std::size_t>(n));
  for (int l = n - 1; l >= 0; --l) {
    const auto k = static_cast<std::size_t>(l);
    const auto coord = 3 * static_cast<std::size_t>(path[k] - 1);
    out.gradient[k] = {coord, before[k] * dweight[k] * after};
    after *= weight[k];
  }
  return out;
}

}  // namespace vdd
