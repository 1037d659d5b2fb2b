#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cspi/errors.hpp"
#include "cspi/fock_space.hpp"
#include "oracles.hpp"

namespace cspi {
namespace {

TEST(FockSpace, LadderOperatorsAndNumberOperator) {
  for (double h : {1.0, 0.25}) {
    const auto fock = build_fock(10, h);
    EXPECT_EQ(fock.dim(), 11);
    EXPECT_LT(max_abs(fock.a_dag - fock.a.adjoint()), 1e-300);
    EXPECT_LT(max_abs(fock.a_dag * fock.a - fock.n_op), 1e-13);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(fock.n_op(k, k).real(), h * k, 1e-13);
    // [a, a^dagger] = h except in the truncated corner
    const CMatrix comm = fock.a * fock.a_dag - fock.a_dag * fock.a;
    for (int k = 0; k < 10; ++k) EXPECT_NEAR(comm(k, k).real(), h, 1e-13);
    EXPECT_NEAR(comm(10, 10).real(), -10.0 * h, 1e-12);
  }
}

TEST(FockSpace, RejectsBadArguments) {
  EXPECT_THROW(build_fock(1), InvalidArgument);
  EXPECT_THROW(build_fock(10, 0.0), InvalidArgument);
  EXPECT_THROW(build_fock(10, -1.0), InvalidArgument);
}

TEST(Glauber, NormAndEigenvalueProperty) {
  const auto fock = build_fock(60);
  const Complex z{0.8, -0.6};
  const auto state = glauber_state(fock, z);
  EXPECT_NEAR(state.amplitudes.norm(), 1.0, 1e-12);
  const CVector lowered = fock.a * state.amplitudes;
  EXPECT_LT((lowered - z * state.amplitudes).head(50).norm(), 1e-12);
  EXPECT_LT(state.tail_bound, 1e-30);
}

TEST(Glauber, OverlapMatchesClosedForm) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (double h : {1.0, 0.5}) {
    const auto fock = build_fock(80, h);
    for (int trial = 0; trial < 20; ++trial) {
      const Complex z1{u(rng), u(rng)}, z2{u(rng), u(rng)};
      const Complex numerical = glauber_state(fock, z1).amplitudes.dot(glauber_state(fock, z2).amplitudes);
      EXPECT_NEAR(std::abs(numerical - oracle::glauber_overlap(z1, z2, h)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(glauber_overlap(z1, z2, h) - oracle::glauber_overlap(z1, z2, h)), 0.0, 1e-15);
    }
  }
}

TEST(Glauber, TailBoundIsRaisedWhenCutoffTooSmall) {
  const auto fock = build_fock(5);
  EXPECT_THROW(glauber_state(fock, Complex{2.0, 0.0}), TailBoundError);
  GlauberOptions loose;
  loose.allow_truncation = true;
  const auto state = glauber_state(fock, Complex{2.0, 0.0}, loose);
  EXPECT_GT(state.tail_bound, 1e-3);
  EXPECT_NO_THROW(glauber_state(build_fock(default_cutoff(Complex{2.0, 0.0}, 1.0)), Complex{2.0, 0.0}));
}

TEST(Glauber, PoissonTailMatchesDirectSum) {
  const double mean = 3.7;
  double head = 0.0;
  for (int k = 0; k <= 9; ++k) head += std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
  EXPECT_NEAR(poisson_tail(mean, 9), 1.0 - head, 1e-13);
}

TEST(Ordering, ParseAndRoundTrip) {
  for (auto ord : {Ordering::normal, Ordering::weyl, Ordering::naive_square})
    EXPECT_EQ(parse_ordering(to_string(ord)), ord);
  EXPECT_THROW(parse_ordering("anti_normal"), InvalidArgument);
  EXPECT_THROW(parse_ordering(""), InvalidArgument);
}

TEST(Ordering, NormalAndWeylDifferByLinearTerm) {
  for (double h : {1.0, 0.5, 0.1}) {
    const auto fock = build_fock(20, h);
    const double mu = 0.4, U = 1.3;
    const CMatrix diff = bose_hubbard_hamiltonian(fock, mu, U, Ordering::weyl) -
                         bose_hubbard_hamiltonian(fock, mu, U, Ordering::normal);
    EXPECT_LT(max_abs(diff - U * h * fock.n_op), 1e-12) << h;
  }
  const auto fock = build_fock(20, 1.0);
  const CMatrix n = fock.n_op;
  const CMatrix normal = -0.4 * n + 0.65 * (fock.a_dag * fock.a_dag * fock.a * fock.a);
  EXPECT_LT(max_abs(normal.topLeftCorner(19, 19) -
                    bose_hubbard_hamiltonian(fock, 0.4, 1.3, Ordering::normal).topLeftCorner(19, 19)),
            1e-12);
}

}  // namespace
}  // namespace cspi
