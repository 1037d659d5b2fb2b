#include "cspi/linalg.hpp"

#include <cmath>

#include "cspi/errors.hpp"

namespace cspi {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix& m) { return max_abs(m - m.adjoint()); }

double off_diagonal_max(const CMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

double SpectralDecomposition::reconstruction_residual(const CMatrix& h) const {
  const CMatrix rebuilt = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  return max_abs(h - rebuilt);
}

CMatrix SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  CVector diag(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) diag[i] = f(eigenvalues[i]);
  return eigenvectors * diag.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition decompose_hermitian(const CMatrix& h, const HermitianPolicy& policy) {
  if (h.rows() != h.cols()) throw InvalidArgument("Hermitian decomposition needs a square matrix");
  const double defect = hermiticity_defect(h);
  if (defect > policy.tolerance) throw NonHermitianError(defect);

  CMatrix work = h;
  if (policy.symmetrize) work = 0.5 * (h + h.adjoint());

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(work);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix unitary_exp(const SpectralDecomposition& generator, double t) {
  return generator.apply([t](double lambda) { return std::exp(-kI * (t * lambda)); });
}

CMatrix matrix_power(const CMatrix& kernel, int n) {
  if (n < 0) throw InvalidArgument("matrix_power: negative exponent");
  CMatrix result = CMatrix::Identity(kernel.rows(), kernel.cols());
  CMatrix base = kernel;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace cspi
