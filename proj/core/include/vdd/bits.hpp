#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vdd {

/// Computational-basis label (b1, ..., bn). Qubit 1 is the leftmost character
/// of the text form and the most significant bit of the packed index.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  /// Parses "0110"; throws DomainError on any other character.
  static BitString from_string(std::string_view text);
  static BitString from_index(std::uint64_t index, int num_qubits);

  int size() const noexcept { return static_cast<int>(bits_.size()); }
  bool empty() const noexcept { return bits_.empty(); }

  /// Zero-based access: `(*this)[0]` is b1.
  std::uint8_t operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  /// Packed index sum_l b_l 2^(n-l). Requires size() <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Index mask of 1-based qubit `qubit` in an n-qubit register.
constexpr std::uint64_t qubit_mask(int qubit, int num_qubits) noexcept {
  return std::uint64_t{1} << (num_qubits - qubit);
}

/// Bit of qubit `level` (1-based) in a packed index.
constexpr unsigned bit_at(std::uint64_t index, int level, int num_qubits) noexcept {
  return static_cast<unsigned>((index >> (num_qubits - level)) & 1U);
}

}  // namespace vdd
