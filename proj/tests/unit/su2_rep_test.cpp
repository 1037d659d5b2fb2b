#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cspi/errors.hpp"
#include "cspi/su2_rep.hpp"
#include "oracles.hpp"

namespace cspi {
namespace {

constexpr double kPi = std::numbers::pi;

DiagonalSpinHamiltonian sz_power(int k) {
  std::vector<double> c(k + 1, 0.0);
  c[k] = 1.0;
  return DiagonalSpinHamiltonian::polynomial(c);
}

TEST(SpinRep, SpinHalfIsHalfPauli) {
  const SpinRep rep(1);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sy << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
  sz << 0.5, 0, 0, -0.5;
  EXPECT_LT(max_abs(rep.sx() - sx), 1e-15);
  EXPECT_LT(max_abs(rep.sy() - sy), 1e-15);
  EXPECT_LT(max_abs(rep.sz() - sz), 1e-15);
}

TEST(SpinRep, SpinOneSzDescending) {
  const SpinRep rep(2);
  EXPECT_EQ(rep.dim(), 3);
  EXPECT_DOUBLE_EQ(rep.sz()(0, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(rep.sz()(1, 1).real(), 0.0);
  EXPECT_DOUBLE_EQ(rep.sz()(2, 2).real(), -1.0);
}

TEST(SpinRep, TrivialRepresentationHasDistinctError) {
  EXPECT_THROW(SpinRep(0), TrivialRepresentationError);
  EXPECT_THROW(SpinRep(-3), InvalidArgument);
}

TEST(SpinRep, AlgebraInvariantsUpToSpinTen) {
  for (int two_s = 1; two_s <= 20; ++two_s) {
    const SpinRep rep(two_s);
    const double s = rep.spin();
    const auto& x = rep.sx();
    const auto& y = rep.sy();
    const auto& z = rep.sz();
    EXPECT_LT(max_abs(x * y - y * x - kI * z), 1e-12) << two_s;
    EXPECT_LT(max_abs(y * z - z * y - kI * x), 1e-12) << two_s;
    EXPECT_LT(max_abs(z * x - x * z - kI * y), 1e-12) << two_s;
    const CMatrix casimir = x * x + y * y + z * z;
    EXPECT_LT(max_abs(casimir - s * (s + 1) * CMatrix::Identity(rep.dim(), rep.dim())), 1e-12) << two_s;
    EXPECT_EQ(max_abs(rep.s_plus().adjoint() - rep.s_minus()), 0.0);
    EXPECT_LT(off_diagonal_max(z), 1e-300);
  }
}

TEST(SpinRep, CommutatorResidualAtTwoSFive) {
  const SpinRep rep(5);
  EXPECT_LT(max_abs(rep.sx() * rep.sy() - rep.sy() * rep.sx() - kI * rep.sz()), 1e-12);
}

TEST(CoherentState, PolesAreExtremalWeights) {
  const SpinRep rep(3);
  const auto north = coherent_state(rep, 0.0, 1.3);
  EXPECT_NEAR(std::abs(north.amplitudes[0]), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(north.amplitudes[0] - std::exp(-kI * 1.3 * 1.5)), 0.0, 1e-14);
  const auto south = coherent_state(rep, kPi, 0.4);
  EXPECT_NEAR(std::abs(south.amplitudes[3]), 1.0, 1e-14);
}

TEST(CoherentState, MatchesWignerSmallD) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
  for (int two_s : {1, 2, 3, 6, 11}) {
    const SpinRep rep(two_s);
    for (int trial = 0; trial < 10; ++trial) {
      const double theta = th(rng), phi = ph(rng);
      const auto state = coherent_state(rep, theta, phi);
      const auto ref = oracle::coherent_amplitudes(two_s, theta, phi);
      for (int i = 0; i <= two_s; ++i) EXPECT_NEAR(std::abs(state.amplitudes[i] - ref[i]), 0.0, 1e-12);
      EXPECT_NEAR(state.amplitudes.norm(), 1.0, 1e-12);
      const double sz = state.amplitudes.dot(rep.sz() * state.amplitudes).real();
      EXPECT_NEAR(sz, rep.spin() * std::cos(theta), 1e-12);
    }
  }
}

TEST(CoherentState, RejectsOutOfRangeTheta) {
  const SpinRep rep(2);
  EXPECT_THROW(coherent_state(rep, -0.1, 0.0), InvalidArgument);
  EXPECT_THROW(coherent_state(rep, kPi + 0.1, 0.0), InvalidArgument);
  EXPECT_THROW(coherent_state(rep, std::nan(""), 0.0), InvalidArgument);
  EXPECT_NO_THROW(coherent_state(rep, kPi + 1e-13, 0.0));
  EXPECT_NEAR(coherent_state(rep, 0.3, -1.0).phi, 2 * kPi - 1.0, 1e-15);
}

TEST(CoherentState, OverlapModulusIsHalfAngleCosinePower) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
  for (int two_s : {1, 2, 5, 8}) {
    const SpinRep rep(two_s);
    for (int trial = 0; trial < 20; ++trial) {
      const double t1 = th(rng), p1 = ph(rng), t2 = th(rng), p2 = ph(rng);
      const double cos_angle = std::sin(t1) * std::sin(t2) * std::cos(p1 - p2) + std::cos(t1) * std::cos(t2);
      const double expected = std::pow(std::sqrt(0.5 * (1.0 + cos_angle)), two_s);
      EXPECT_NEAR(std::abs(overlap(coherent_state(rep, t1, p1), coherent_state(rep, t2, p2))), expected, 1e-10);
    }
  }
}

TEST(QSymbol, LinearAndQuadraticClosedForms) {
  for (int two_s : {1, 2, 5}) {
    const SpinRep rep(two_s);
    for (double theta : {0.0, 0.4, 1.2, kPi}) {
      EXPECT_NEAR(q_symbol(rep, sz_power(1), theta), rep.spin() * std::cos(theta), 1e-12);
    }
  }
  const SpinRep one(2);
  for (double theta : {0.0, 0.7, kPi / 2, 2.9}) {
    const double x = std::cos(theta);
    EXPECT_NEAR(q_symbol(one, sz_power(2), theta), 0.5 * (x * x + 1.0), 1e-12);
  }
  EXPECT_NEAR(q_symbol(one, sz_power(2), kPi / 2), 0.5, 1e-12);
  const SpinRep half(1);
  EXPECT_NEAR(q_symbol(half, sz_power(2), 1.1), 0.25, 1e-12);
}

TEST(QSymbol, IndependentOfAzimuth) {
  const SpinRep rep(4);
  const auto h = DiagonalSpinHamiltonian::polynomial({0.2, -1.0, 0.5, 0.3});
  for (double theta : {0.3, 1.4, 2.5}) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 8; ++k) {
      const double v = q_symbol(rep, h, theta, 0.7 * k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LT(hi - lo, 1e-12);
  }
}

TEST(QSymbol, RejectsNonDiagonalMatrix) {
  const SpinRep rep(2);
  EXPECT_THROW(q_symbol(rep, rep.sx(), 0.3), NonDiagonalError);
  EXPECT_NO_THROW(q_symbol(rep, rep.sz(), 0.3));
}

TEST(QSymbolPolynomial, RecoversClosedFormsAndInterpolatesOutOfSample) {
  const SpinRep one(2);
  const auto p = q_symbol_polynomial(one, sz_power(2));
  const auto mono = p.monomial_coefficients();
  ASSERT_EQ(mono.size(), 3u);
  EXPECT_NEAR(mono[0], 0.5, 1e-13);
  EXPECT_NEAR(mono[1], 0.0, 1e-13);
  EXPECT_NEAR(mono[2], 0.5, 1e-13);

  const SpinRep rep(3);
  const auto lin = q_symbol_polynomial(rep, sz_power(1)).monomial_coefficients();
  EXPECT_NEAR(lin[1], 1.5, 1e-13);
  for (double c : {lin[0], lin[2], lin[3]}) EXPECT_NEAR(c, 0.0, 1e-13);

  // out-of-sample accuracy, arbitrary diagonal H, compared with the binomial-weight oracle
  for (int two_s : {3, 6, 10}) {
    const SpinRep r(two_s);
    std::vector<double> ev(two_s + 1);
    for (int i = 0; i <= two_s; ++i) ev[i] = std::sin(1.3 * i) + 0.1 * i * i;
    const auto h = DiagonalSpinHamiltonian::from_eigenvalues(ev);
    const auto poly = q_symbol_polynomial(r, h);
    EXPECT_LE(poly.degree(), two_s);
    for (double x : {-0.97, -0.31, 0.123, 0.77, 1.0, 1.2}) {
      EXPECT_NEAR(poly(x), oracle::q_symbol(two_s, ev, x), 1e-10) << two_s << " " << x;
    }
  }
}

TEST(ResolutionOfIdentity, ExactQuadratureCases) {
  EXPECT_LT(resolution_of_identity_residual(SpinRep(1), 2, 3), 1e-12);
  EXPECT_LT(resolution_of_identity_residual(SpinRep(2), 3, 5), 1e-12);
  for (int two_s = 1; two_s <= 12; ++two_s) {
    EXPECT_LT(resolution_of_identity_residual(SpinRep(two_s), two_s + 1, 2 * two_s + 1), 1e-12) << two_s;
  }
}

TEST(ResolutionOfIdentity, UnderResolvedIsOrderOne) {
  const double r = resolution_of_identity_residual(SpinRep(2), 1, 5);
  EXPECT_NEAR(r, 0.5, 1e-12);  // a single node at x = 0 weights m = 0 by 3/2
}

TEST(AntipodalElement, VanishesBetweenPoles) {
  EXPECT_NEAR(std::abs(antipodal_element(SpinRep(1), sz_power(1), 0.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(antipodal_element(SpinRep(2), sz_power(2), 0.0, 0.9)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(antipodal_element(SpinRep(2), sz_power(2), kPi, 0.2)), 0.0, 1e-14);
}

// <n|f(Sz)|-n> = (cos sin)^{2s}(theta/2) sum_m C(2s, s-m) e^{-i pi m} f(m), independent of phi.
Complex antipodal_closed_form(int two_s, const std::vector<double>& ev, double theta) {
  const double s = 0.5 * two_s;
  Complex acc{0.0, 0.0};
  for (int i = 0; i <= two_s; ++i) {
    const double m = s - i;
    acc += boost::math::binomial_coefficient<double>(two_s, i) * std::exp(-kI * (kPi * m)) * ev[i];
  }
  return acc * std::pow(std::cos(0.5 * theta) * std::sin(0.5 * theta), two_s);
}

TEST(AntipodalElement, MatchesClosedFormAwayFromPoles) {
  for (int two_s : {2, 3, 4}) {
    const SpinRep rep(two_s);
    const auto h = sz_power(2);
    for (double theta : {0.3, 0.7, kPi / 2, 2.2}) {
      for (double phi : {0.0, 1.1}) {
        const Complex got = antipodal_element(rep, h, theta, phi);
        EXPECT_NEAR(std::abs(got - antipodal_closed_form(two_s, h.eigenvalues(rep), theta)), 0.0, 1e-12);
      }
    }
  }
  // spin 1: -sin^2(theta)/2, nonzero off the poles
  EXPECT_NEAR(antipodal_element(SpinRep(2), sz_power(2), 0.7, 0.3).real(), -0.5 * std::pow(std::sin(0.7), 2), 1e-12);
  // spin 3/2, equator: the even-in-m terms cancel pairwise
  EXPECT_NEAR(std::abs(antipodal_element(SpinRep(3), sz_power(2), kPi / 2, 0.0)), 0.0, 1e-12);
}

}  // namespace
}  // namespace cspi
