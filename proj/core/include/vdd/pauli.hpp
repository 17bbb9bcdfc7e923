#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vdd/bits.hpp"
#include "vdd/state.hpp"

namespace vdd {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// coeff * P_1 (x) P_2 (x) ... (x) P_n with real coeff.
///
/// Action on basis states: X and Y flip the bit, Z and Y contribute (-1)^b,
/// and Y carries an extra factor i, i.e. Y|0> = i|1>, Y|1> = -i|0>.
class PauliString {
 public:
  PauliString(double coeff, std::vector<Pauli> ops);
  /// Label such as "ZZI" (qubit 1 first).
  static PauliString from_label(double coeff, std::string_view label);

  double coeff() const noexcept { return coeff_; }
  std::span<const Pauli> ops() const noexcept { return ops_; }
  int size() const noexcept { return static_cast<int>(ops_.size()); }
  std::string label() const;

  /// Packed-index masks: positions holding X or Y / Z or Y.
  std::uint64_t flip_mask() const noexcept { return flip_mask_; }
  std::uint64_t sign_mask() const noexcept { return sign_mask_; }
  bool is_diagonal() const noexcept { return flip_mask_ == 0; }

  /// (b', phase) with P|b> = phase |b'>; the coefficient is not included.
  std::pair<std::uint64_t, std::complex<double>> apply(std::uint64_t index) const noexcept {
    const bool odd = (std::popcount(index & sign_mask_) & 1) != 0;
    return {index ^ flip_mask_, odd ? -y_phase_ : y_phase_};
  }

 private:
  double coeff_;
  std::vector<Pauli> ops_;
  std::uint64_t flip_mask_ = 0;
  std::uint64_t sign_mask_ = 0;
  std::complex<double> y_phase_{1.0, 0.0};  // i^(number of Y)
};

struct Connection {
  BitString target;
  std::complex<double> phase;  // <target| P |b> / coeff
};

/// The unique basis state connected to b by the string, with its phase.
Connection apply_string(const PauliString& string, const BitString& bits);

class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int num_qubits);

  /// Throws DomainError on length mismatch or non-finite coefficient.
  void add_term(PauliString term);

  int num_qubits() const noexcept { return num_qubits_; }
  std::span<const PauliString> terms() const noexcept { return terms_; }
  /// True when no term contains an odd number of Y, so the matrix is real.
  bool is_real() const noexcept;

  /// H|v>, matrix-free.
  StateVector apply(const StateVector& v) const;

 private:
  int num_qubits_;
  std::vector<PauliString> terms_;
};

enum class ModelKind { kZ1Z2, kTfim, kHeisenberg };
enum class Boundary { kOpen, kPeriodic };

ModelKind parse_model_kind(std::string_view name);  // "z1z2" | "tfim" | "heisenberg"
std::string_view to_string(ModelKind kind);
Boundary parse_boundary(std::string_view name);     // "open" | "periodic"
std::string_view to_string(Boundary boundary);

struct ModelSpec {
  ModelKind model = ModelKind::kTfim;
  int n = 2;
  double g = 1.0;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
  Boundary boundary = Boundary::kOpen;
};

/// Z1Z2: one term Z (x) Z (x) I...; TFIM: sum over bonds Z_iZ_j + g sum X_i;
/// Heisenberg: sum over bonds jx XX + jy YY + jz ZZ. Bonds (i, i+1) for
/// i < n, plus (n, 1) when periodic.
PauliHamiltonian build_model(const ModelSpec& spec);

/// Re <v|H|v>; throws DomainError if the imaginary residue exceeds 1e-10.
double expectation(const PauliHamiltonian& h, const StateVector& v);

inline constexpr int kDenseMaxQubits = 12;

/// Dense 2^n x 2^n matrix; n <= kDenseMaxQubits.
Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h);

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

/// Smallest eigenpair from a dense Hermitian eigensolve (LAPACK ?syevr /
/// ?heevr). Throws CapacityError for n > kDenseMaxQubits.
GroundState ground_energy(const PauliHamiltonian& h);

}  // namespace vdd
