#include "vdd/pauli.hpp"

#include <bit>
#include <cmath>

#include <lapacke.h>

#include "vdd/errors.hpp"

namespace vdd {

using cplx = std::complex<double>;

PauliString::PauliString(double coeff, std::vector<Pauli> ops) : coeff_(coeff), ops_(std::move(ops)) {
  if (!std::isfinite(coeff_)) throw DomainError("Pauli coefficient must be finite");
  if (ops_.empty() || ops_.size() > 64) throw DomainError("Pauli string length must be in 1..64");
  const int n = size();
  int y_count = 0;
  for (int q = 1; q <= n; ++q) {
    const Pauli p = ops_[static_cast<std::size_t>(q - 1)];
    const std::uint64_t mask = qubit_mask(q, n);
    if (p == Pauli::X || p == Pauli::Y) flip_mask_ |= mask;
    if (p == Pauli::Z || p == Pauli::Y) sign_mask_ |= mask;
    if (p == Pauli::Y) ++y_count;
  }
  static constexpr cplx kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  y_phase_ = kPowers[y_count % 4];
}

PauliString PauliString::from_label(double coeff, std::string_view label) {
  std::vector<Pauli> ops;
  for (char c : label) {
    switch (c) {
      case 'I': ops.push_back(Pauli::I); break;
      case 'X': ops.push_back(Pauli::X); break;
      case 'Y': ops.push_back(Pauli::Y); break;
      case 'Z': ops.push_back(Pauli::Z); break;
      default: throw DomainError("invalid Pauli label '" + std::string(label) + "'");
    }
  }
  return PauliString(coeff, std::move(ops));
}

std::string PauliString::label() const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  for (Pauli p : ops_) out.push_back(kNames[static_cast<int>(p)]);
  return out;
}

Connection apply_string(const PauliString& string, const BitString& bits) {
  if (bits.size() != string.size()) throw DomainError("bit string length does not match Pauli string");
  const auto [target, phase] = string.apply(bits.to_index());
  return {BitString::from_index(target, bits.size()), phase};
}

PauliHamiltonian::PauliHamiltonian(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 64) throw DomainError("num_qubits must be in 1..64");
}

void PauliHamiltonian::add_term(PauliString term) {
  if (term.size() != num_qubits_) throw DomainError("Pauli term length does not match num_qubits");
  terms_.push_back(std::move(term));
}

bool PauliHamiltonian::is_real() const noexcept {
  for (const auto& t : terms_) {
    if (std::popcount(t.flip_mask() & t.sign_mask()) % 2 != 0) return false;
  }
  return true;
}

StateVector PauliHamiltonian::apply(const StateVector& v) const {
  if (v.num_qubits != num_qubits_ || v.amps.size() != (std::size_t{1} << num_qubits_)) {
    throw DomainError("state size does not match Hamiltonian");
  }
  StateVector out{num_qubits_, std::vector<cplx>(v.amps.size())};
  for (const auto& term : terms_) {
    const double c = term.coeff();
    for (std::uint64_t b = 0; b < v.amps.size(); ++b) {
      const auto [target, phase] = term.apply(b);
      out.amps[target] += c * phase * v.amps[b];
    }
  }
  return out;
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "z1z2") return ModelKind::kZ1Z2;
  if (name == "tfim") return ModelKind::kTfim;
  if (name == "heisenberg") return ModelKind::kHeisenberg;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kZ1Z2: return "z1z2";
    case ModelKind::kTfim: return "tfim";
    case ModelKind::kHeisenberg: return "heisenberg";
  }
  return "unknown";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "open") return Boundary::kOpen;
  if (name == "periodic") return Boundary::kPeriodic;
  throw DomainError("unknown boundary '" + std::string(name) + "'");
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::kOpen ? "open" : "periodic";
}

namespace {

PauliString two_site(int n, int i, int j, Pauli p, double coeff) {
  std::vector<Pauli> ops(static_cast<std::size_t>(n), Pauli::I);
  ops[static_cast<std::size_t>(i - 1)] = p;
  ops[static_cast<std::size_t>(j - 1)] = p;
  return PauliString(coeff, std::move(ops));
}

std::vector<std::pair<int, int>> chain_bonds(int n, Boundary boundary) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 1; i < n; ++i) bonds.emplace_back(i, i + 1);
  if (boundary == Boundary::kPeriodic) bonds.emplace_back(n, 1);
  return bonds;
}

}  // namespace

PauliHamiltonian build_model(const ModelSpec& spec) {
  if (spec.n < 2) throw DomainError("coupled models need n >= 2");
  for (double c : {spec.g, spec.jx, spec.jy, spec.jz}) {
    if (!std::isfinite(c)) throw DomainError("model couplings must be finite");
  }
  const int n = spec.n;
  PauliHamiltonian h(n);
  switch (spec.model) {
    case ModelKind::kZ1Z2:
      h.add_term(two_site(n, 1, 2, Pauli::Z, 1.0));
      break;
    case ModelKind::kTfim:
      for (auto [i, j] : chain_bonds(n, spec.boundary)) h.add_term(two_site(n, i, j, Pauli::Z, 1.0));
      for (int i = 1; i <= n; ++i) {
        std::vector<Pauli> ops(static_cast<std::size_t>(n), Pauli::I);
        ops[static_cast<std::size_t>(i - 1)] = Pauli::X;
        h.add_term(PauliString(spec.g, std::move(ops)));
      }
      break;
    case ModelKind::kHeisenberg:
      for (auto [i, j] : chain_bonds(n, spec.boundary)) {
        h.add_term(two_site(n, i, j, Pauli::X, spec.jx));
        h.add_term(two_site(n, i, j, Pauli::Y, spec.jy));
        h.add_term(two_site(n, i, j, Pauli::Z, spec.jz));
      }
      break;
  }
  return h;
}

double expectation(const PauliHamiltonian& h, const StateVector& v) {
  const StateVector hv = h.apply(v);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < v.amps.size(); ++i) acc += std::conj(v.amps[i]) * hv.amps[i];
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
    throw DomainError("expectation has imaginary residue " + std::to_string(acc.imag()));
  }
  return acc.real();
}

namespace {

void require_dense(const PauliHamiltonian& h) {
  if (h.num_qubits() > kDenseMaxQubits) {
    throw CapacityError("dense routines support n <= " + std::to_string(kDenseMaxQubits) +
                        "; use VMC mode for larger systems");
  }
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h) {
  require_dense(h);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto [target, phase] = term.apply(static_cast<std::uint64_t>(b));
      m(static_cast<Eigen::Index>(target), b) += term.coeff() * phase;
    }
  }
  return m;
}

GroundState ground_energy(const PauliHamiltonian& h) {
  require_dense(h);
  const int n = h.num_qubits();
  const auto dim = static_cast<lapack_int>(std::size_t{1} << n);
  GroundState out;
  out.state.num_qubits = n;
  out.state.amps.resize(static_cast<std::size_t>(dim));

  lapack_int found = 0;
  std::vector<lapack_int> support(2);
  std::vector<double> eigenvalues(static_cast<std::size_t>(dim));  // LAPACK uses all N slots
  lapack_int info = 0;

  if (h.is_real()) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& term : h.terms()) {
      for (lapack_int b = 0; b < dim; ++b) {
        const auto [target, phase] = term.apply(static_cast<std::uint64_t>(b));
        a(static_cast<Eigen::Index>(target), b) += term.coeff() * phase.real();
      }
    }
    Eigen::VectorXd z(dim);
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', dim, a.data(), dim, 0.0, 0.0, 1, 1, 0.0,
                          &found, eigenvalues.data(), z.data(), dim, support.data());
    for (lapack_int i = 0; i < dim; ++i) out.state.amps[static_cast<std::size_t>(i)] = z(i);
  } else {
    Eigen::MatrixXcd a = dense_matrix(h);
    Eigen::VectorXcd z(dim);
    info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', dim,
                          reinterpret_cast<lapack_complex_double*>(a.data()), dim, 0.0, 0.0, 1, 1,
                          0.0, &found, eigenvalues.data(),
                          reinterpret_cast<lapack_complex_double*>(z.data()), dim, support.data());
    for (lapack_int i = 0; i < dim; ++i) out.state.amps[static_cast<std::size_t>(i)] = z(i);
  }
  if (info != 0 || found != 1) {
    throw std::runtime_error("dense eigensolver failed (info " + std::to_string(info) + ")");
  }
  out.energy = eigenvalues.front();
  return out;
}

}  // namespace vdd
