#include "vdd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "vdd/errors.hpp"
#include "vdd/rng.hpp"
#include "vdd/vmc.hpp"

namespace vdd {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& config) {
  if (params.size() != grads.size()) throw DomainError("parameter and gradient sizes differ");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) throw DomainError("Adam state size differs from parameters");
  for (std::size_t j = 0; j < grads.size(); ++j) {
    if (!std::isfinite(grads[j])) {
      throw TrainingError(state.step + 1, std::to_string(j), "non-finite gradient");
    }
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t j = 0; j < params.size(); ++j) {
    state.m[j] = config.beta1 * state.m[j] + (1.0 - config.beta1) * grads[j];
    state.v[j] = config.beta2 * state.v[j] + (1.0 - config.beta2) * grads[j] * grads[j];
    const double m_hat = state.m[j] / c1;
    const double v_hat = state.v[j] / c2;
    params[j] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
  }
}

void sgd_step(std::span<double> params, std::span<const double> grads, double lr, ParamMode mode) {
  if (params.size() != grads.size()) throw DomainError("parameter and gradient sizes differ");
  for (std::size_t j = 0; j < grads.size(); ++j) {
    if (!std::isfinite(grads[j])) throw TrainingError(0, std::to_string(j), "non-finite gradient");
  }
  for (std::size_t j = 0; j < params.size(); ++j) params[j] -= lr * grads[j];
  if (mode == ParamMode::kRaw) project_raw(params);
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "energy_gap") return LossKind::kEnergyGap;
  if (name == "energy") return LossKind::kEnergy;
  if (name == "bce") return LossKind::kBce;
  if (name == "kl") return LossKind::kKl;
  throw DomainError("unknown loss '" + std::string(name) + "'");
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kEnergyGap: return "energy_gap";
    case LossKind::kEnergy: return "energy";
    case LossKind::kBce: return "bce";
    case LossKind::kKl: return "kl";
  }
  return "unknown";
}

namespace {

void check_dataset(const VddGraph& graph, const LabeledDataset& data, bool need_labels) {
  if (data.items.empty()) throw DomainError("dataset is empty");
  for (const auto& item : data.items) {
    if (item.bits.size() != graph.num_qubits()) throw DomainError("dataset bit length does not match graph");
    if (need_labels && !item.label) throw DomainError("BCE needs a label for every item");
    if (item.label && *item.label != 0 && *item.label != 1) throw DomainError("labels must be 0 or 1");
  }
}

GradientVector empty_gradient(const VddGraph& graph, ParamMode mode) {
  GradientVector g;
  g.mode = mode;
  g.entries.assign(graph.parameter_count(), 0.0);
  g.labels = parameter_labels(graph, mode);
  return g;
}

/// Shared driver: loss_of(p) returns (loss, dloss/dp) for a clamped p.
template <typename LossOf>
LossGradient probability_loss(const VddGraph& graph, const LabeledDataset& data, ParamMode mode,
                              LossOf&& loss_of) {
  LossGradient out{0.0, empty_gradient(graph, mode)};
  const double inv_n = 1.0 / static_cast<double>(data.items.size());
  for (const auto& item : data.items) {
    const PathProbability pp = path_probability(graph, item.bits.to_index(), mode);
    const double p = std::clamp(pp.probability, kProbabilityFloor, 1.0 - kProbabilityFloor);
    const bool clamped = p != pp.probability;
    const auto [loss, dloss] = loss_of(p, item);
    out.loss += inv_n * loss;
    if (clamped) continue;
    for (const auto& [coord, dp] : pp.gradient) out.gradient.entries[coord] += inv_n * dloss * dp;
  }
  return out;
}

}  // namespace

LossGradient bce_loss(const VddGraph& graph, const LabeledDataset& data, ParamMode mode) {
  check_dataset(graph, data, true);
  return probability_loss(graph, data, mode, [](double p, const LabeledItem& item) {
    const double l = static_cast<double>(*item.label);
    const double loss = -(l * std::log(p) + (1.0 - l) * std::log(1.0 - p));
    const double dloss = -(l / p - (1.0 - l) / (1.0 - p));
    return std::pair{loss, dloss};
  });
}

LossGradient kl_loss(const VddGraph& graph, const LabeledDataset& data, ParamMode mode) {
  check_dataset(graph, data, false);
  return probability_loss(graph, data, mode, [](double p, const LabeledItem&) {
    return std::pair{-std::log(p), -1.0 / p};
  });
}

namespace {

void validate_config(const TrainConfig& config) {
  if (config.epochs < 1) throw ConfigError("epochs", "must be at least 1");
  const double lr = std::visit([](const auto& o) { return o.lr; }, config.optimizer);
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("lr", "must be positive");
  if (const auto* adam = std::get_if<AdamConfig>(&config.optimizer)) {
    if (!(adam->beta1 >= 0.0 && adam->beta1 < 1.0)) throw ConfigError("beta1", "must be in [0, 1)");
    if (!(adam->beta2 >= 0.0 && adam->beta2 < 1.0)) throw ConfigError("beta2", "must be in [0, 1)");
    if (!(adam->eps > 0.0)) throw ConfigError("eps", "must be positive");
  }
  if (const auto* vmc = std::get_if<VmcSource>(&config.source)) {
    if (vmc->batch_size < 2) throw ConfigError("batch_size", "must be at least 2");
  }
  const bool data_loss = config.loss == LossKind::kBce || config.loss == LossKind::kKl;
  if (data_loss) {
    if (!config.dataset || config.dataset->items.empty()) {
      throw ConfigError("dataset", "BCE and KL losses need a non-empty dataset");
    }
    if (std::holds_alternative<VmcSource>(config.source)) {
      throw ConfigError("gradient_source", "BCE and KL losses use exact path gradients");
    }
  }
}

}  // namespace

TrainTrace train(const TrainConfig& config) {
  validate_config(config);
  const bool data_loss = config.loss == LossKind::kBce || config.loss == LossKind::kKl;
  const int n = data_loss ? config.dataset->items.front().bits.size() : config.model.n;
  if (n < 1) throw ConfigError("n", "must be at least 1");

  std::optional<PauliHamiltonian> h;
  TrainTrace trace;
  if (!data_loss) {
    try {
      h = build_model(config.model);
    } catch (const DomainError& e) {
      throw ConfigError("model", e.what());
    }
    trace.e0 = config.e0;
    if (!trace.e0 && n <= kDenseMaxQubits) trace.e0 = ground_energy(*h).energy;
    if (config.loss == LossKind::kEnergyGap && !trace.e0) {
      throw ConfigError("e0", "energy-gap loss needs e0 for n > " + std::to_string(kDenseMaxQubits));
    }
  }

  VddGraph graph = init_params(build_ansatz(config.ansatz, n), InitScheme::uniform(config.seed));
  const ParamMode mode = config.param_mode;
  std::vector<double> coords = get_coordinates(graph, mode);
  if (mode == ParamMode::kRaw) project_raw(coords);
  const std::vector<std::string> labels = parameter_labels(graph, mode);

  AdamState adam_state;
  trace.records.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    set_coordinates(graph, coords, mode);
    EpochRecord record;
    record.epoch = epoch;
    std::vector<double> grads;

    if (data_loss) {
      LossGradient lg = config.loss == LossKind::kBce ? bce_loss(graph, *config.dataset, mode)
                                                      : kl_loss(graph, *config.dataset, mode);
      record.loss = lg.loss;
      record.energy = std::numeric_limits<double>::quiet_NaN();
      grads = std::move(lg.gradient.entries);
    } else {
      if (const auto* vmc = std::get_if<VmcSource>(&config.source)) {
        const VmcBatch batch =
            make_batch(graph, *h, vmc->batch_size, derive_seed({config.seed, static_cast<std::uint64_t>(epoch)}),
                       mode, config.threads);
        record.energy = batch.energy_mean;
        grads = vmc_gradient(batch).entries;
      } else {
        EnergyGradient eg = exact_energy_and_gradient(graph, *h, mode);
        record.energy = eg.energy;
        grads = std::move(eg.gradient.entries);
      }
      record.loss = config.loss == LossKind::kEnergyGap ? record.energy - *trace.e0 : record.energy;
      if (trace.e0 && *trace.e0 != 0.0) {
        record.relative_error = std::abs((record.energy - *trace.e0) / *trace.e0);
      }
    }

    if (mode == ParamMode::kTrig) {
      const auto orientation = trig_orientation(coords);
      for (std::size_t k = 0; k < orientation.size(); ++k) grads[3 * k] *= orientation[k];
    }
    double norm2 = 0.0;
    for (std::size_t j = 0; j < grads.size(); ++j) {
      if (!std::isfinite(grads[j])) throw TrainingError(epoch, labels[j], "non-finite gradient");
      norm2 += grads[j] * grads[j];
    }
    record.grad_norm = std::sqrt(norm2);
    trace.records.push_back(record);

    if (const auto* adam = std::get_if<AdamConfig>(&config.optimizer)) {
      adam_step(coords, grads, adam_state, *adam);
      if (mode == ParamMode::kRaw) project_raw(coords);
    } else {
      sgd_step(coords, grads, std::get<SgdConfig>(config.optimizer).lr, mode);
    }
  }
  set_coordinates(graph, coords, mode);
  trace.final_graph = std::move(graph);
  return trace;
}

void write_trace_csv(const TrainTrace& trace, std::ostream& out) {
  out << "epoch,loss,energy,relative_error,grad_norm\n";
  char buf[64];
  auto real = [&buf](double x) -> std::string {
    if (std::isnan(x)) return "";
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  };
  for (const auto& r : trace.records) {
    out << r.epoch << ',' << real(r.loss) << ',' << real(r.energy) << ','
        << (r.relative_error ? real(*r.relative_error) : std::string()) << ',' << real(r.grad_norm)
        << '\n';
  }
}

}  // namespace vdd
