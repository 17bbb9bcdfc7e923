#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vdd/exact.hpp"
#include "vdd/graph.hpp"
#include "vdd/params.hpp"
#include "vdd/pauli.hpp"

namespace vdd {

/// Samples are drawn in fixed-size chunks, each with its own stream
/// derive_seed({seed, chunk}); results do not depend on the thread count.
inline constexpr std::size_t kSampleChunk = 1024;

/// i.i.d. draws from |psi(b)|^2 by walking down the graph, emitting 0 with
/// probability r^2 at every visited node. Packed indices, qubit 1 = MSB.
std::vector<std::uint64_t> sample_indices(const VddGraph& graph, std::size_t count,
                                          std::uint64_t seed, int threads = 1);

std::vector<BitString> sample(const VddGraph& graph, std::size_t count, std::uint64_t seed);

/// sum over terms of c_s <b|s|b'> psi(b')/psi(b), one connected b' per string.
/// Throws DomainError when psi(b) = 0.
cplx local_estimator(const VddGraph& graph, const PauliHamiltonian& h, const BitString& bits);

/// d log psi(b) / d theta_j for every coordinate (dense; zero off the path).
/// Throws DomainError when b takes an edge of zero amplitude.
std::vector<cplx> log_derivatives(const VddGraph& graph, const BitString& bits,
                                  ParamMode mode = ParamMode::kRaw);

/// Samples with their local estimators and sparse log-derivatives.
struct VmcBatch {
  int num_qubits = 0;
  ParamMode mode = ParamMode::kRaw;
  std::vector<std::string> labels;
  std::vector<std::uint64_t> samples;
  /// Empty for sampled batches (uniform 1/N); otherwise normalized weights,
  /// e.g. exact Born weights when enumerating the full basis.
  std::vector<double> weights;
  std::vector<cplx> local_values;
  /// Log-derivatives of sample i live in [offset[i], offset[i+1]).
  std::vector<std::size_t> logd_offset;
  std::vector<std::uint32_t> logd_index;
  std::vector<cplx> logd_value;
  double energy_mean = 0.0;
  double energy_stderr = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t parameter_count() const noexcept { return labels.size(); }
  double weight(std::size_t i) const noexcept {
    return weights.empty() ? 1.0 / static_cast<double>(samples.size()) : weights[i];
  }
  BitString sample_bits(std::size_t i) const { return BitString::from_index(samples[i], num_qubits); }
  std::vector<cplx> log_derivs(std::size_t i) const;
};

/// Draws `count` samples and evaluates estimators for them.
VmcBatch make_batch(const VddGraph& graph, const PauliHamiltonian& h, std::size_t count,
                    std::uint64_t seed, ParamMode mode = ParamMode::kRaw, int threads = 1);

/// Estimators for given configurations, optionally with explicit weights.
VmcBatch make_batch_from_samples(const VddGraph& graph, const PauliHamiltonian& h,
                                 std::vector<std::uint64_t> samples,
                                 std::vector<double> weights = {},
                                 ParamMode mode = ParamMode::kRaw);

/// 2 Re E[conj(O_j) (A - E[A])] with the in-batch mean as centering.
/// Throws DomainError for batches smaller than 2.
GradientVector vmc_gradient(const VmcBatch& batch);

/// Per-entry delete-a-block jackknife standard errors of vmc_gradient.
std::vector<double> vmc_gradient_stderr(const VmcBatch& batch, std::size_t blocks = 50);

struct EnergyEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean of Re(local value) and its standard error (sample std / sqrt N).
EnergyEstimate vmc_energy(const VmcBatch& batch);

/// CSV: sample_index,bitstring,local_value_re,local_value_im
void write_batch_csv(const VmcBatch& batch, std::ostream& out);

}  // namespace vdd
