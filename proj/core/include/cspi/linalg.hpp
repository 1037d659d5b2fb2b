#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace cspi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// How strictly Hermiticity is enforced before a spectral decomposition.
struct HermitianPolicy {
  double tolerance = 1e-10;
  /// Replace H by (H + H^dagger)/2 when the defect is within tolerance.
  bool symmetrize = false;
};

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns, unitary

  /// max |H - V diag(lambda) V^dagger|
  double reconstruction_residual(const CMatrix& h) const;

  /// V f(diag(lambda)) V^dagger
  CMatrix apply(const std::function<Complex(double)>& f) const;
};

double max_abs(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);
double off_diagonal_max(const CMatrix& m);

/// Throws NonHermitianError when the defect exceeds policy.tolerance.
SpectralDecomposition decompose_hermitian(const CMatrix& h, const HermitianPolicy& policy = {});

/// exp(-i t G) for Hermitian G.
CMatrix unitary_exp(const SpectralDecomposition& generator, double t);

/// Kernel^n by repeated squaring.
CMatrix matrix_power(const CMatrix& kernel, int n);

}  // namespace cspi
