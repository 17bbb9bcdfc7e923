#pragma once

#include <cstdint>

#include "vdd/pauli.hpp"

namespace vdd {

struct DimerBenchmark {
  double energy = 0.0;
  int sweeps = 0;  // of the best restart
};

/// Lowest energy found over states |psi_12> (x) |psi_34> (x) ... (a trailing
/// single qubit when n is odd). Block coordinate descent: each block is
/// replaced by the ground state of its mean-field Hamiltonian until the energy
/// stops decreasing. Best of `restarts` random starts.
DimerBenchmark dimer_product_benchmark(const PauliHamiltonian& h, std::uint64_t seed,
                                       int restarts = 8);

}  // namespace vdd
