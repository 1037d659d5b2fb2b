#include <cmath>

#include <gtest/gtest.h>

#include "cspi/convergence.hpp"
#include "cspi/errors.hpp"
#include "cspi/linalg.hpp"
#include "cspi/quadrature.hpp"

namespace cspi {
namespace {

TEST(GaussLegendre, IntegratesPolynomialsUpToDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      EXPECT_NEAR(sum, exact, 1e-14) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussLegendre, MapsToInterval) {
  const auto rule = gauss_legendre(20, 0.0, 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::exp(-rule.nodes[i]);
  EXPECT_NEAR(sum, 1.0 - std::exp(-3.0), 1e-14);
}

TEST(GaussLegendre, RejectsEmptyRule) { EXPECT_THROW(gauss_legendre(0), InvalidArgument); }

TEST(Linalg, DecomposeRejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 2.0;
  EXPECT_THROW(decompose_hermitian(m), NonHermitianError);
}

TEST(Linalg, SymmetrizeFlagOnlyAbsorbsSmallDefects) {
  CMatrix m(2, 2);
  m << 1.0, 0.5, 0.5 + 1e-12, 2.0;
  HermitianPolicy sym{.tolerance = 1e-10, .symmetrize = true};
  const auto spec = decompose_hermitian(m, sym);
  EXPECT_LT(spec.reconstruction_residual(0.5 * (m + m.adjoint())), 1e-12);
  m(1, 0) += 1e-6;
  EXPECT_THROW(decompose_hermitian(m, sym), NonHermitianError);
}

TEST(Linalg, MatrixPowerMatchesRepeatedProduct) {
  CMatrix k = CMatrix::Random(5, 5) * 0.4;
  CMatrix brute = CMatrix::Identity(5, 5);
  for (int i = 0; i < 13; ++i) brute *= k;
  EXPECT_LT(max_abs(matrix_power(k, 13) - brute), 1e-12);
  EXPECT_LT(max_abs(matrix_power(k, 0) - CMatrix::Identity(5, 5)), 0.0 + 1e-300);
}

TEST(Convergence, RichardsonCancelsLeadingInverseN) {
  // Z_N = 3 + 2/N + 5/N^2
  auto z = [](double n) { return 3.0 + 2.0 / n + 5.0 / (n * n); };
  const std::vector<double> seq = {z(16), z(32), z(64)};
  const auto est = richardson_limit(seq);
  EXPECT_NEAR(est.value, 3.0, 5.0 / (32.0 * 64.0) * 1.01);
  EXPECT_GT(est.error, 0.0);
  const std::vector<double> n = {8, 16, 32, 64};
  const std::vector<double> err = {2.0 / 8, 2.0 / 16, 2.0 / 32, 2.0 / 64};
  EXPECT_NEAR(log_log_slope(n, err), -1.0, 1e-12);
}

}  // namespace
}  // namespace cspi
