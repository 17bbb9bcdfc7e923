#pragma once

#include <complex>
#include <vector>

namespace vdd {

/// Dense amplitudes, amps[sum_l b_l 2^(n-l)] = <b|psi>.
struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amps;

  std::size_t dimension() const noexcept { return amps.size(); }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
  }
};

}  // namespace vdd
