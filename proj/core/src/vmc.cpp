#include "vdd/vmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "vdd/errors.hpp"
#include "vdd/parallel.hpp"
#include "vdd/rng.hpp"

namespace vdd {

namespace {

void require_packable(const VddGraph& graph) {
  if (graph.num_qubits() < 1 || graph.num_qubits() > 64) {
    throw DomainError("VMC supports 1..64 qubits");
  }
}

/// Cached edge amplitudes for repeated amplitude evaluation.
class AmplitudeEvaluator {
 public:
  explicit AmplitudeEvaluator(const VddGraph& graph) : graph_(graph) {
    edges_.reserve(graph.node_count());
    for (const Node& node : graph.nodes()) edges_.push_back(edge_amplitudes(node.params));
    phase_ = std::polar(1.0, graph.global_phase());
  }

  cplx operator()(std::uint64_t index) const {
    const int n = graph_.num_qubits();
    cplx value = phase_;
    NodeId current = graph_.root_child();
    for (int level = 1; level <= n; ++level) {
      if (!graph_.contains(current)) throw DomainError("graph does not validate: broken path");
      const Node& node = graph_.node(current);
      const EdgeAmplitudes& e = edges_[static_cast<std::size_t>(current - 1)];
      const bool one = bit_at(index, level, n) != 0;
      value *= one ? e.right : e.left;
      current = one ? node.child1 : node.child0;
    }
    return value;
  }

 private:
  const VddGraph& graph_;
  std::vector<EdgeAmplitudes> edges_;
  cplx phase_;
};

cplx local_value(const AmplitudeEvaluator& psi, const PauliHamiltonian& h, std::uint64_t index) {
  const cplx own = psi(index);
  if (own == cplx(0.0, 0.0)) throw DomainError("local estimator undefined where psi(b) = 0");
  cplx acc = 0.0;
  for (const auto& term : h.terms()) {
    const auto [target, phase] = term.apply(index);
    const cplx element = term.coeff() * std::conj(phase);
    acc += term.is_diagonal() ? element : element * (psi(target) / own);
  }
  return acc;
}

/// Appends (coordinate, O_j) pairs for the path of `index`.
void append_log_derivs(const VddGraph& graph, std::uint64_t index, ParamMode mode,
                       std::vector<std::uint32_t>& idx, std::vector<cplx>& val) {
  const int n = graph.num_qubits();
  const cplx i_unit{0.0, 1.0};
  NodeId current = graph.root_child();
  for (int level = 1; level <= n; ++level) {
    const Node& node = graph.node(current);
    const double r = node.params.r;
    const double s2 = (1.0 - r) * (1.0 + r);
    const bool one = bit_at(index, level, n) != 0;
    const auto base = static_cast<std::uint32_t>(3 * (current - 1));
    if (!one) {
      if (r == 0.0) throw DomainError("log-derivative singular: left edge with r = 0 at node " + std::to_string(current));
      const double d = mode == ParamMode::kRaw ? 1.0 / r : -std::sqrt(s2) / r;
      idx.push_back(base);
      val.emplace_back(d, 0.0);
      idx.push_back(base + 1);
      val.push_back(i_unit);
    } else {
      if (s2 <= 0.0) throw DomainError("log-derivative singular: right edge with r = 1 at node " + std::to_string(current));
      const double d = mode == ParamMode::kRaw ? -r / s2 : r / std::sqrt(s2);
      idx.push_back(base);
      val.emplace_back(d, 0.0);
      idx.push_back(base + 2);
      val.push_back(i_unit);
    }
    current = one ? node.child1 : node.child0;
  }
}

void finish_energy(VmcBatch& batch) {
  const std::size_t count = batch.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) mean += batch.weight(i) * batch.local_values[i].real();
  batch.energy_mean = mean;
  if (count < 2) {
    batch.energy_stderr = 0.0;
    return;
  }
  if (batch.weights.empty()) {
    double ss = 0.0;
    for (const cplx& v : batch.local_values) ss += (v.real() - mean) * (v.real() - mean);
    batch.energy_stderr = std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
  } else {
    double var = 0.0;
    double w2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double d = batch.local_values[i].real() - mean;
      var += batch.weights[i] * d * d;
      w2 += batch.weights[i] * batch.weights[i];
    }
    batch.energy_stderr = std::sqrt(var * w2);
  }
}

}  // namespace

std::vector<std::uint64_t> sample_indices(const VddGraph& graph, std::size_t count,
                                          std::uint64_t seed, int threads) {
  require_packable(graph);
  if (count < 1) throw DomainError("sample count must be at least 1");
  std::vector<double> r2;
  r2.reserve(graph.node_count());
  for (const Node& node : graph.nodes()) r2.push_back(node.params.r * node.params.r);

  const int n = graph.num_qubits();
  std::vector<std::uint64_t> out(count);
  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    Rng rng(derive_seed({seed, chunk}));
    const std::size_t end = std::min(count, (chunk + 1) * kSampleChunk);
    for (std::size_t s = chunk * kSampleChunk; s < end; ++s) {
      std::uint64_t index = 0;
      NodeId current = graph.root_child();
      for (int level = 1; level <= n; ++level) {
        const Node& node = graph.node(current);
        const bool one = !(rng.uniform() < r2[static_cast<std::size_t>(current - 1)]);
        index = (index << 1) | static_cast<std::uint64_t>(one);
        current = one ? node.child1 : node.child0;
      }
      out[s] = index;
    }
  });
  return out;
}

std::vector<BitString> sample(const VddGraph& graph, std::size_t count, std::uint64_t seed) {
  const auto indices = sample_indices(graph, count, seed);
  std::vector<BitString> out;
  out.reserve(indices.size());
  for (std::uint64_t index : indices) out.push_back(BitString::from_index(index, graph.num_qubits()));
  return out;
}

cplx local_estimator(const VddGraph& graph, const PauliHamiltonian& h, const BitString& bits) {
  require_packable(graph);
  if (bits.size() != graph.num_qubits() || h.num_qubits() != graph.num_qubits()) {
    throw DomainError("size mismatch between graph, Hamiltonian and bit string");
  }
  const AmplitudeEvaluator psi(graph);
  return local_value(psi, h, bits.to_index());
}

std::vector<cplx> log_derivatives(const VddGraph& graph, const BitString& bits, ParamMode mode) {
  require_packable(graph);
  if (bits.size() != graph.num_qubits()) throw DomainError("bit string length does not match graph");
  std::vector<std::uint32_t> idx;
  std::vector<cplx> val;
  append_log_derivs(graph, bits.to_index(), mode, idx, val);
  std::vector<cplx> out(graph.parameter_count());
  for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] += val[k];
  return out;
}

std::vector<cplx> VmcBatch::log_derivs(std::size_t i) const {
  std::vector<cplx> out(parameter_count());
  for (std::size_t k = logd_offset[i]; k < logd_offset[i + 1]; ++k) out[logd_index[k]] += logd_value[k];
  return out;
}

VmcBatch make_batch_from_samples(const VddGraph& graph, const PauliHamiltonian& h,
                                 std::vector<std::uint64_t> samples, std::vector<double> weights,
                                 ParamMode mode) {
  require_packable(graph);
  if (h.num_qubits() != graph.num_qubits()) throw DomainError("Hamiltonian size does not match graph");
  if (!weights.empty() && weights.size() != samples.size()) {
    throw DomainError("weights length does not match samples");
  }
  VmcBatch batch;
  batch.num_qubits = graph.num_qubits();
  batch.mode = mode;
  batch.labels = parameter_labels(graph, mode);
  batch.samples = std::move(samples);
  if (!weights.empty()) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw DomainError("weights must have a positive sum");
    for (double& w : weights) w /= total;
    batch.weights = std::move(weights);
  }

  const AmplitudeEvaluator psi(graph);
  const std::size_t count = batch.samples.size();
  batch.local_values.resize(count);
  batch.logd_offset.reserve(count + 1);
  batch.logd_offset.push_back(0);
  const std::size_t per_sample = 2 * static_cast<std::size_t>(graph.num_qubits());
  batch.logd_index.reserve(count * per_sample);
  batch.logd_value.reserve(count * per_sample);
  for (std::size_t i = 0; i < count; ++i) {
    batch.local_values[i] = local_value(psi, h, batch.samples[i]);
    append_log_derivs(graph, batch.samples[i], mode, batch.logd_index, batch.logd_value);
    batch.logd_offset.push_back(batch.logd_index.size());
  }
  finish_energy(batch);
  return batch;
}

VmcBatch make_batch(const VddGraph& graph, const PauliHamiltonian& h, std::size_t count,
                    std::uint64_t seed, ParamMode mode, int threads) {
  return make_batch_from_samples(graph, h, sample_indices(graph, count, seed, threads), {}, mode);
}

GradientVector vmc_gradient(const VmcBatch& batch) {
  if (batch.size() < 2) throw DomainError("VMC gradient needs a batch of at least 2 samples");
  cplx mean = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) mean += batch.weight(i) * batch.local_values[i];
  std::vector<cplx> acc(batch.parameter_count());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const cplx centered = batch.weight(i) * (batch.local_values[i] - mean);
    for (std::size_t k = batch.logd_offset[i]; k < batch.logd_offset[i + 1]; ++k) {
      acc[batch.logd_index[k]] += std::conj(batch.logd_value[k]) * centered;
    }
  }
  GradientVector grad;
  grad.mode = batch.mode;
  grad.labels = batch.labels;
  grad.entries.resize(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) grad.entries[j] = 2.0 * acc[j].real();
  return grad;
}

std::vector<double> vmc_gradient_stderr(const VmcBatch& batch, std::size_t blocks) {
  if (!batch.weights.empty()) throw DomainError("jackknife errors need an unweighted sampled batch");
  const std::size_t count = batch.size();
  if (count < 2) throw DomainError("jackknife needs at least 2 samples");
  blocks = std::clamp<std::size_t>(blocks, 2, count);
  const std::size_t params = batch.parameter_count();

  // Per-block sums of conj(O) A, conj(O) and A.
  std::vector<std::vector<cplx>> oa(blocks, std::vector<cplx>(params));
  std::vector<std::vector<cplx>> o(blocks, std::vector<cplx>(params));
  std::vector<cplx> a(blocks);
  std::vector<double> size(blocks);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t b = i * blocks / count;
    const cplx value = batch.local_values[i];
    a[b] += value;
    size[b] += 1.0;
    for (std::size_t k = batch.logd_offset[i]; k < batch.logd_offset[i + 1]; ++k) {
      const cplx co = std::conj(batch.logd_value[k]);
      oa[b][batch.logd_index[k]] += co * value;
      o[b][batch.logd_index[k]] += co;
    }
  }
  std::vector<cplx> oa_total(params), o_total(params);
  cplx a_total = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    a_total += a[b];
    for (std::size_t j = 0; j < params; ++j) {
      oa_total[j] += oa[b][j];
      o_total[j] += o[b][j];
    }
  }
  std::vector<std::vector<double>> leave_out(blocks, std::vector<double>(params));
  for (std::size_t b = 0; b < blocks; ++b) {
    const double m = static_cast<double>(count) - size[b];
    const cplx mean = (a_total - a[b]) / m;
    for (std::size_t j = 0; j < params; ++j) {
      leave_out[b][j] = 2.0 * ((oa_total[j] - oa[b][j]) / m - mean * (o_total[j] - o[b][j]) / m).real();
    }
  }
  std::vector<double> out(params);
  const auto nb = static_cast<double>(blocks);
  for (std::size_t j = 0; j < params; ++j) {
    double mean = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) mean += leave_out[b][j];
    mean /= nb;
    double ss = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) ss += (leave_out[b][j] - mean) * (leave_out[b][j] - mean);
    out[j] = std::sqrt((nb - 1.0) / nb * ss);
  }
  return out;
}

EnergyEstimate vmc_energy(const VmcBatch& batch) {
  if (batch.size() < 1) throw DomainError("empty batch");
  return {batch.energy_mean, batch.energy_stderr};
}

void write_batch_csv(const VmcBatch& batch, std::ostream& out) {
  out << "sample_index,bitstring,local_value_re,local_value_im\n";
  char buf[128];
  for (std::size_t i = 0; i < batch.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", batch.local_values[i].real(),
                  batch.local_values[i].imag());
    out << i << ',' << batch.sample_bits(i).to_string() << ',' << buf << '\n';
  }
}

}  // namespace vdd
