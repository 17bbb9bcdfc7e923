#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "vdd/ansatz.hpp"
#include "vdd/exact.hpp"
#include "vdd/graph.hpp"
#include "vdd/params.hpp"
#include "vdd/pauli.hpp"

namespace vdd {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct SgdConfig {
  double lr = 0.01;
};

using OptimizerConfig = std::variant<AdamConfig, SgdConfig>;

/// Moment estimates; zero-initialized on the first step.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
};

/// Bias-corrected Adam update in place. Throws TrainingError on a non-finite
/// gradient entry (the label is the flat index).
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& config);

/// theta <- theta - lr * grad; in raw mode r entries are then projected into
/// [kRawMargin, 1 - kRawMargin].
void sgd_step(std::span<double> params, std::span<const double> grads, double lr, ParamMode mode);

struct ExactSource {};
struct VmcSource {
  std::size_t batch_size = 1024;
};
using GradientSource = std::variant<ExactSource, VmcSource>;

enum class LossKind { kEnergyGap, kEnergy, kBce, kKl };

LossKind parse_loss_kind(std::string_view name);  // "energy_gap" | "energy" | "bce" | "kl"
std::string_view to_string(LossKind kind);

struct LabeledItem {
  BitString bits;
  std::optional<int> label;  // 0 or 1; required by BCE
};

struct LabeledDataset {
  std::vector<LabeledItem> items;
};

struct TrainConfig {
  AnsatzKind ansatz = AnsatzKind::kAccordion;
  ModelSpec model;
  OptimizerConfig optimizer = AdamConfig{};
  int epochs = 10000;
  std::uint64_t seed = 0;
  GradientSource source = ExactSource{};
  ParamMode param_mode = ParamMode::kTrig;
  LossKind loss = LossKind::kEnergyGap;
  /// Ground energy; computed by the dense oracle when absent and n <= 12.
  std::optional<double> e0;
  /// Training data for BCE / KL. Its bit length sets the qubit count.
  std::optional<LabeledDataset> dataset;
  int threads = 1;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double energy = 0.0;  // NaN for BCE / KL
  std::optional<double> relative_error;
  double grad_norm = 0.0;
};

/// Records are taken before each update; `final_graph` is after the last one.
struct TrainTrace {
  std::vector<EpochRecord> records;
  VddGraph final_graph;
  std::optional<double> e0;
};

/// Initializes with uniform random parameters from `seed`, then runs
/// `epochs` full-gradient steps. Throws ConfigError for invalid settings and
/// TrainingError when a gradient turns non-finite.
TrainTrace train(const TrainConfig& config);

struct LossGradient {
  double loss = 0.0;
  GradientVector gradient;
};

/// Probability clamp for log losses.
inline constexpr double kProbabilityFloor = 1e-12;

/// -(1/N) sum [l log p + (1 - l) log(1 - p)], p = |<b|psi>|^2 clamped.
LossGradient bce_loss(const VddGraph& graph, const LabeledDataset& data,
                      ParamMode mode = ParamMode::kRaw);

/// -(1/N) sum log p(b_i), p clamped.
LossGradient kl_loss(const VddGraph& graph, const LabeledDataset& data,
                     ParamMode mode = ParamMode::kRaw);

/// CSV: epoch,loss,energy,relative_error,grad_norm
void write_trace_csv(const TrainTrace& trace, std::ostream& out);

}  // namespace vdd
