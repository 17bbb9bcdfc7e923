#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/SVD>

#include "oracles.hpp"
#include "vdd/ansatz.hpp"
#include "vdd/errors.hpp"
#include "vdd/exact.hpp"
#include "vdd/rng.hpp"

using namespace vdd;

TEST(Ansatz, NodeCounts) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(build_product(n).node_count(), static_cast<std::size_t>(n));
    EXPECT_EQ(build_accordion(n).node_count(), static_cast<std::size_t>(3 * n / 2));
    EXPECT_EQ(build_accordion(n).parameter_count(), static_cast<std::size_t>(3 * (3 * n / 2)));
    EXPECT_EQ(ansatz_node_count(AnsatzKind::kAccordion, n), static_cast<std::size_t>(3 * n / 2));
  }
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(build_universal(n).node_count(), (std::size_t{1} << n) - 1);
  }
  EXPECT_THROW(build_accordion(0), DomainError);
  EXPECT_THROW(build_universal(21), DomainError);
}

TEST(Ansatz, AccordionWiring) {
  const VddGraph g = build_accordion(4);
  // 1 | 2 3 | 4 | 5 6
  EXPECT_EQ(g.node(1).child0, 2);
  EXPECT_EQ(g.node(1).child1, 3);
  EXPECT_EQ(g.node(2).child0, 4);
  EXPECT_EQ(g.node(3).child1, 4);
  EXPECT_EQ(g.node(4).child0, 5);
  EXPECT_EQ(g.node(4).child1, 6);
  EXPECT_EQ(g.node(6).child0, kTerminal);
}

TEST(Ansatz, UniformInitIsSeeded) {
  const VddGraph a = init_params(build_accordion(6), InitScheme::uniform(9));
  const VddGraph b = init_params(build_accordion(6), InitScheme::uniform(9));
  const VddGraph c = init_params(build_accordion(6), InitScheme::uniform(10));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& nd : a.nodes()) {
    EXPECT_GE(nd.params.r, 0.0);
    EXPECT_LT(nd.params.r, 1.0);
  }
}

TEST(Ansatz, BasisInit) {
  for (auto kind : {AnsatzKind::kProduct, AnsatzKind::kAccordion, AnsatzKind::kUniversal}) {
    const BitString b = BitString::from_string("10110");
    const VddGraph g = init_params(build_ansatz(kind, 5), InitScheme::basis_state(b));
    EXPECT_NEAR(std::abs(oracle::amplitude(g, "10110")), 1.0, 1e-15);
  }
}

TEST(Ansatz, ParseInitScheme) {
  EXPECT_EQ(parse_init_scheme("basis:011", 0).basis, BitString::from_string("011"));
  EXPECT_EQ(parse_init_scheme("balanced", 0).kind, InitScheme::Kind::kBalanced);
  EXPECT_THROW(parse_init_scheme("gaussian", 0), DomainError);
  EXPECT_THROW(parse_ansatz_kind("tree"), DomainError);
}

TEST(Ansatz, EncodeStateReproducesAmplitudes) {
  Rng rng(77);
  for (int n : {1, 3, 6}) {
    StateVector sv;
    sv.num_qubits = n;
    sv.amps.resize(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : sv.amps) {
      a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
      norm += std::norm(a);
    }
    for (auto& a : sv.amps) a /= std::sqrt(norm);
    const VddGraph g = encode_state(sv);
    EXPECT_TRUE(validate(g).empty());
    for (std::size_t i = 0; i < sv.amps.size(); ++i) {
      EXPECT_LT(std::abs(oracle::amplitude(g, oracle::bits_of(i, n)) - sv.amps[i]), 1e-12);
    }
  }
}

TEST(Ansatz, EncodeStateHandlesZeros) {
  StateVector sv{2, {0.0, 0.0, 0.0, cplx(0.0, 1.0)}};
  const VddGraph g = encode_state(sv);
  EXPECT_LT(std::abs(oracle::amplitude(g, "11") - cplx(0.0, 1.0)), 1e-15);
  EXPECT_EQ(oracle::amplitude(g, "00"), cplx(0.0, 0.0));
}

TEST(Ansatz, EncodeStateErrors) {
  StateVector big;
  big.num_qubits = 13;
  big.amps.assign(std::size_t{1} << 13, 0.0);
  big.amps[0] = 1.0;
  EXPECT_THROW(encode_state(big), CapacityError);
  StateVector bad{1, {1.0, 1.0}};
  EXPECT_THROW(encode_state(bad), DomainError);
}

// Accordion states are products over qubit pairs (1,2), (3,4), ...
TEST(Ansatz, AccordionEvenCutsAreProducts) {
  for (int n : {4, 6}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const VddGraph g = init_params(build_accordion(n), InitScheme::uniform(seed));
      const Eigen::VectorXcd psi = oracle::state(g);
      for (int cut = 2; cut < n; cut += 2) {
        const int rows = 1 << cut, cols = 1 << (n - cut);
        Eigen::MatrixXcd m(rows, cols);
        for (int i = 0; i < rows; ++i) {
          for (int j = 0; j < cols; ++j) m(i, j) = psi(i * cols + j);
        }
        const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
        EXPECT_LT(s(1), 1e-10);
      }
    }
  }
}
