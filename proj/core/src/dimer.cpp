#include "vdd/dimer.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vdd/errors.hpp"
#include "vdd/graph.hpp"
#include "vdd/rng.hpp"

namespace vdd {
namespace {

struct Block {
  int first = 0;  // 0-based qubit
  int size = 0;
};

/// A term restricted to every block; identity factors are dropped.
struct SplitTerm {
  double coeff = 0.0;
  std::vector<int> blocks;
  std::vector<Eigen::MatrixXcd> factors;
};

Eigen::MatrixXcd local_matrix(const std::vector<Pauli>& ops) {
  const PauliString p(1.0, ops);
  const int dim = 1 << p.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const auto [target, phase] = p.apply(static_cast<std::uint64_t>(b));
    m(static_cast<int>(target), b) = phase;
  }
  return m;
}

std::vector<SplitTerm> split_terms(const PauliHamiltonian& h, const std::vector<Block>& blocks) {
  std::vector<SplitTerm> out;
  for (const auto& term : h.terms()) {
    SplitTerm st;
    st.coeff = term.coeff();
    const auto ops = term.ops();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      std::vector<Pauli> local(ops.begin() + blocks[k].first,
                               ops.begin() + blocks[k].first + blocks[k].size);
      bool identity = true;
      for (Pauli p : local) identity = identity && p == Pauli::I;
      if (identity) continue;
      st.blocks.push_back(static_cast<int>(k));
      st.factors.push_back(local_matrix(local));
    }
    out.push_back(std::move(st));
  }
  return out;
}

double product_energy(const std::vector<SplitTerm>& terms, const std::vector<Eigen::VectorXcd>& states) {
  double e = 0.0;
  for (const auto& t : terms) {
    cplx prod = t.coeff;
    for (std::size_t j = 0; j < t.blocks.size(); ++j) {
      const auto& v = states[t.blocks[j]];
      prod *= v.dot(t.factors[j] * v);
    }
    e += prod.real();
  }
  return e;
}

}  // namespace

DimerBenchmark dimer_product_benchmark(const PauliHamiltonian& h, std::uint64_t seed, int restarts) {
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  const int n = h.num_qubits();
  std::vector<Block> blocks;
  for (int q = 0; q < n; q += 2) blocks.push_back({q, std::min(2, n - q)});
  const std::vector<SplitTerm> terms = split_terms(h, blocks);

  DimerBenchmark best{std::numeric_limits<double>::infinity(), 0};
  for (int attempt = 0; attempt < restarts; ++attempt) {
    Rng rng(derive_seed({seed, static_cast<std::uint64_t>(attempt)}));
    std::vector<Eigen::VectorXcd> states;
    for (const auto& b : blocks) {
      Eigen::VectorXcd v(1 << b.size);
      for (auto& c : v) c = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
      states.push_back(v.normalized());
    }
    double energy = product_energy(terms, states);
    int sweeps = 0;
    for (; sweeps < 10000; ++sweeps) {
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const int dim = 1 << blocks[k].size;
        Eigen::MatrixXcd eff = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& t : terms) {
          cplx weight = t.coeff;
          const Eigen::MatrixXcd* own = nullptr;
          for (std::size_t j = 0; j < t.blocks.size(); ++j) {
            if (t.blocks[j] == static_cast<int>(k)) {
              own = &t.factors[j];
            } else {
              const auto& v = states[t.blocks[j]];
              weight *= v.dot(t.factors[j] * v);
            }
          }
          if (own) eff += weight * *own;
        }
        const Eigen::MatrixXcd herm = 0.5 * (eff + eff.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
        states[k] = solver.eigenvectors().col(0);
      }
      const double next = product_energy(terms, states);
      const bool done = energy - next <= 1e-13 * std::max(1.0, std::abs(next));
      energy = std::min(energy, next);
      if (done) break;
    }
    if (energy < best.energy) best = {energy, sweeps + 1};
  }
  return best;
}

}  // namespace vdd
