#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vdd/errors.hpp"
#include "vdd/pauli.hpp"
#include "vdd/rng.hpp"

using namespace vdd;

TEST(PauliString, ActionOnBasisStates) {
  const auto y = PauliString::from_label(1.0, "Y");
  EXPECT_EQ(y.apply(0), std::make_pair(std::uint64_t{1}, cplx(0, 1)));
  EXPECT_EQ(y.apply(1), std::make_pair(std::uint64_t{0}, cplx(0, -1)));
  const auto zx = PauliString::from_label(2.0, "ZX");
  EXPECT_EQ(zx.flip_mask(), 1u);
  EXPECT_EQ(zx.sign_mask(), 2u);
  EXPECT_EQ(zx.apply(3), std::make_pair(std::uint64_t{2}, cplx(-1, 0)));
  EXPECT_EQ(zx.label(), "ZX");
  const Connection c = apply_string(zx, BitString::from_string("10"));
  EXPECT_EQ(c.target, BitString::from_string("11"));
  EXPECT_EQ(c.phase, cplx(-1, 0));
  EXPECT_THROW(PauliString::from_label(1.0, "ZQ"), DomainError);
}

TEST(PauliString, MatchesKroneckerOracle) {
  const std::string alphabet = "IXYZ";
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::string label;
    for (int q = 0; q < 4; ++q) label += alphabet[rng.next_u64() % 4];
    PauliHamiltonian h(4);
    h.add_term(PauliString::from_label(0.7, label));
    EXPECT_LT((dense_matrix(h) - 0.7 * oracle::kron_label(label)).norm(), 1e-14) << label;
  }
}

TEST(Models, DenseMatricesMatchOracle) {
  for (int n : {2, 3, 5}) {
    EXPECT_LT((dense_matrix(build_model({ModelKind::kTfim, n, 0.8})) - oracle::tfim(n, 0.8)).norm(), 1e-13);
    EXPECT_LT((dense_matrix(build_model({ModelKind::kHeisenberg, n, 1.0, 0.5, 1.5, -1.0})) -
               oracle::heisenberg(n, 0.5, 1.5, -1.0))
                  .norm(),
              1e-13);
    EXPECT_LT((dense_matrix(build_model({ModelKind::kZ1Z2, n})) - oracle::z1z2(n)).norm(), 1e-13);
  }
  ModelSpec periodic{ModelKind::kTfim, 4, 1.3};
  periodic.boundary = Boundary::kPeriodic;
  EXPECT_LT((dense_matrix(build_model(periodic)) - oracle::tfim(4, 1.3, true)).norm(), 1e-13);
  EXPECT_EQ(build_model(periodic).terms().size(), 8u);
}

TEST(Models, Errors) {
  EXPECT_THROW(build_model({ModelKind::kTfim, 1}), DomainError);
  EXPECT_THROW(parse_model_kind("ising"), DomainError);
  EXPECT_THROW(parse_boundary("twisted"), DomainError);
  PauliHamiltonian h(3);
  EXPECT_THROW(h.add_term(PauliString::from_label(1.0, "ZZ")), DomainError);
  EXPECT_THROW(h.add_term(PauliString::from_label(std::nan(""), "ZZZ")), DomainError);
}

TEST(Hamiltonian, ApplyMatchesOracle) {
  const auto h = build_model({ModelKind::kHeisenberg, 5});
  const Eigen::MatrixXcd m = oracle::heisenberg(5, 1, 1, 1);
  Rng rng(3);
  StateVector v{5, std::vector<cplx>(32)};
  Eigen::VectorXcd e(32);
  for (int i = 0; i < 32; ++i) {
    v.amps[static_cast<std::size_t>(i)] = cplx(rng.uniform(), rng.uniform());
    e(i) = v.amps[static_cast<std::size_t>(i)];
  }
  const StateVector hv = h.apply(v);
  const Eigen::VectorXcd he = m * e;
  for (int i = 0; i < 32; ++i) EXPECT_LT(std::abs(hv.amps[static_cast<std::size_t>(i)] - he(i)), 1e-13);
  EXPECT_NEAR(expectation(h, v), (e.adjoint() * m * e)(0, 0).real(), 1e-12);
}

TEST(GroundEnergy, ClosedForms) {
  for (int n = 2; n <= 12; ++n) {
    EXPECT_NEAR(ground_energy(build_model({ModelKind::kTfim, n, 0.0})).energy, -(n - 1.0), 1e-9) << n;
  }
  EXPECT_NEAR(ground_energy(build_model({ModelKind::kHeisenberg, 2})).energy, -3.0, 1e-9);
  EXPECT_NEAR(ground_energy(build_model({ModelKind::kTfim, 2, 1.0})).energy, -std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(ground_energy(build_model({ModelKind::kZ1Z2, 6})).energy, -1.0, 1e-9);
}

TEST(GroundEnergy, MatchesEigenOracle) {
  for (int n : {3, 6, 8}) {
    EXPECT_NEAR(ground_energy(build_model({ModelKind::kTfim, n, 0.9})).energy, oracle::ground(oracle::tfim(n, 0.9)),
                1e-9);
    EXPECT_NEAR(ground_energy(build_model({ModelKind::kHeisenberg, n})).energy,
                oracle::ground(oracle::heisenberg(n, 1, 1, 1)), 1e-9);
  }
}

TEST(GroundEnergy, ComplexPathAndState) {
  PauliHamiltonian h(3);
  h.add_term(PauliString::from_label(1.0, "YZI"));
  h.add_term(PauliString::from_label(0.5, "XXI"));
  h.add_term(PauliString::from_label(-0.3, "IIY"));
  ASSERT_FALSE(h.is_real());
  const GroundState gs = ground_energy(h);
  EXPECT_NEAR(gs.energy, oracle::ground(dense_matrix(h)), 1e-10);
  EXPECT_NEAR(expectation(h, gs.state), gs.energy, 1e-10);
  EXPECT_NEAR(gs.state.norm_squared(), 1.0, 1e-12);
}

TEST(GroundEnergy, CapacityLimit) {
  EXPECT_THROW(ground_energy(build_model({ModelKind::kTfim, 13})), CapacityError);
  EXPECT_THROW(dense_matrix(build_model({ModelKind::kTfim, 13})), CapacityError);
}
