#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdd/graph.hpp"
#include "vdd/params.hpp"
#include "vdd/pauli.hpp"
#include "vdd/state.hpp"

namespace vdd {

inline constexpr int kStateVectorMaxQubits = 20;

/// One entry per trainable coordinate, ordered (r1|u1, omega1, phi1, r2, ...).
struct GradientVector {
  ParamMode mode = ParamMode::kRaw;
  std::vector<double> entries;
  std::vector<std::string> labels;
  /// Raw-mode labels whose r sits exactly on 0 or 1. The entry there is
  /// evaluated with r clamped to [kRawMargin, 1 - kRawMargin].
  std::vector<std::string> singular_labels;

  std::size_t size() const noexcept { return entries.size(); }
  /// Lookup by label, accepting negative aliases such as "phi-1".
  double at(std::string_view label) const;
  double max_abs() const noexcept;
  double norm() const noexcept;
};

/// Dense amplitudes by level-wise forward propagation of prefix amplitudes.
/// Throws CapacityError for n > kStateVectorMaxQubits.
StateVector to_state_vector(const VddGraph& graph);

/// <psi|H|psi> with H applied matrix-free.
double exact_energy(const VddGraph& graph, const PauliHamiltonian& h);

struct EnergyGradient {
  double energy = 0.0;
  GradientVector gradient;
  /// d<H>/d(global phase); zero up to rounding for a normalized state.
  double global_phase_derivative = 0.0;
};

/// Energy and 2 Re <d_j psi|H|psi> for every coordinate, via one forward pass
/// over prefixes and one backward pass accumulating suffix overlaps.
EnergyGradient exact_energy_and_gradient(const VddGraph& graph, const PauliHamiltonian& h,
                                         ParamMode mode = ParamMode::kRaw);

GradientVector exact_gradient(const VddGraph& graph, const PauliHamiltonian& h,
                              ParamMode mode = ParamMode::kRaw);

/// Re sum_b conj(d_j psi(b)) cotangent(b) for every coordinate. `cotangent`
/// has length 2^n. Building block for energy and probability losses.
GradientVector state_pullback(const VddGraph& graph, std::span<const cplx> cotangent,
                              ParamMode mode = ParamMode::kRaw);

/// Central differences of exact_energy with step in [1e-8, 1e-3]. Raw r probes
/// are clipped into [0, 1], which makes the difference one-sided at the box.
GradientVector finite_difference(const VddGraph& graph, const PauliHamiltonian& h, double step,
                                 ParamMode mode = ParamMode::kRaw);

/// p(b) = |psi(b)|^2 and its sparse gradient along b's path.
struct PathProbability {
  double probability = 0.0;
  std::vector<std::pair<std::size_t, double>> gradient;  // (coordinate, dp/dtheta)
};

PathProbability path_probability(const VddGraph& graph, std::uint64_t index,
                                 ParamMode mode = ParamMode::kRaw);

}  // namespace vdd
