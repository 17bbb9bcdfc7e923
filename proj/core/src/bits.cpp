#include "vdd/bits.hpp"

#include "vdd/errors.hpp"

namespace vdd {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw DomainError("bit values must be 0 or 1");
  }
}

BitString BitString::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("invalid bit string '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::uint64_t index, int num_qubits) {
  if (num_qubits < 0 || num_qubits > 64) throw DomainError("bit string length must be in 0..64");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_qubits));
  for (int l = 1; l <= num_qubits; ++l) {
    bits[static_cast<std::size_t>(l - 1)] = static_cast<std::uint8_t>(bit_at(index, l, num_qubits));
  }
  return BitString(std::move(bits));
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 64) throw DomainError("bit string longer than 64 cannot be packed");
  std::uint64_t index = 0;
  for (std::uint8_t b : bits_) index = (index << 1) | b;
  return index;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (std::uint8_t b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

}  // namespace vdd
