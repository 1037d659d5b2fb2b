#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cspi/linalg.hpp"

namespace cspi {

/// Spin-s irrep of su(2) in the S_z eigenbasis, ordered m = s, s-1, ..., -s.
///
/// Spin is carried as the integer two_s so half-integer spins stay exact.
class SpinRep {
 public:
  /// Throws TrivialRepresentationError for two_s == 0.
  explicit SpinRep(int two_s);

  int two_s() const noexcept { return two_s_; }
  int dim() const noexcept { return two_s_ + 1; }
  double spin() const noexcept { return 0.5 * two_s_; }
  /// Magnetic quantum number of basis index i.
  double m(int index) const noexcept { return spin() - index; }

  const CMatrix& sz() const noexcept { return sz_; }
  const CMatrix& sx() const noexcept { return sx_; }
  const CMatrix& sy() const noexcept { return sy_; }
  const CMatrix& s_plus() const noexcept { return s_plus_; }
  const CMatrix& s_minus() const noexcept { return s_minus_; }

  /// Cached eigendecomposition of S_y, used for exp(-i theta S_y).
  const SpectralDecomposition& sy_spectrum() const noexcept { return sy_spectrum_; }

 private:
  int two_s_;
  CMatrix sz_, sx_, sy_, s_plus_, s_minus_;
  SpectralDecomposition sy_spectrum_;
};

SpinRep build_spin_rep(int two_s);

struct SpinCoherentState {
  double theta = 0.0;
  double phi = 0.0;  // wrapped to [0, 2pi)
  CVector amplitudes;
};

/// |n> = exp(-i phi S_z) exp(-i theta S_y) |s>.
///
/// theta outside [0, pi] by more than 1e-12 is rejected; smaller excursions are clamped.
SpinCoherentState coherent_state(const SpinRep& rep, double theta, double phi);

Complex overlap(const SpinCoherentState& bra, const SpinCoherentState& ket);

/// H = sum_k c_k S_z^k, or an arbitrary diagonal given by its eigenvalues in
/// basis order (m = s ... -s).
class DiagonalSpinHamiltonian {
 public:
  static DiagonalSpinHamiltonian polynomial(std::vector<double> coeffs);
  static DiagonalSpinHamiltonian from_eigenvalues(std::vector<double> eigenvalues);

  bool has_polynomial() const noexcept { return !coeffs_.empty(); }
  /// Empty for eigenvalue-list Hamiltonians.
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// Polynomial degree in S_z; 2s when only eigenvalues are known.
  int degree(const SpinRep& rep) const;

  /// Diagonal entries in basis order. Throws if an eigenvalue list has the wrong length.
  std::vector<double> eigenvalues(const SpinRep& rep) const;
  CMatrix matrix(const SpinRep& rep) const;

  /// sum_k c_k x^k; polynomial form only.
  double evaluate_polynomial(double x) const;

 private:
  std::vector<double> coeffs_;
  std::vector<double> eigenvalues_;
};

/// <n|H|n> at polar angle theta (and azimuth phi, on which it cannot depend for diagonal H).
double q_symbol(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double theta, double phi = 0.0);

/// Same for a general matrix; throws NonDiagonalError unless H is diagonal to 1e-12.
double q_symbol(const SpinRep& rep, const CMatrix& h, double theta, double phi = 0.0);

/// The Q-symbol H(x), x = cos(theta), as a polynomial stored in the Chebyshev basis.
class QSymbolPolynomial {
 public:
  QSymbolPolynomial() = default;
  explicit QSymbolPolynomial(std::vector<double> chebyshev) : chebyshev_(std::move(chebyshev)) {}

  int degree() const noexcept { return static_cast<int>(chebyshev_.size()) - 1; }
  std::span<const double> chebyshev_coefficients() const noexcept { return chebyshev_; }

  /// Clenshaw recurrence; valid for any real x, not only [-1, 1].
  double operator()(double x) const;

  /// Power-basis coefficients a_0 ... a_d. Ill-conditioned for large degree.
  std::vector<double> monomial_coefficients() const;

 private:
  std::vector<double> chebyshev_;
};

/// Interpolates H(x) through Chebyshev nodes; the symbol of a diagonal H has degree <= 2s.
QSymbolPolynomial q_symbol_polynomial(const SpinRep& rep, const DiagonalSpinHamiltonian& h);

/// Max-entry deviation of (2s+1)/(4pi) sum_q w_q |n_q><n_q| from the identity, with
/// Gauss-Legendre nodes in cos(theta) and uniform nodes in phi.
double resolution_of_identity_residual(const SpinRep& rep, int n_theta, int n_phi);

/// <n(theta, phi)| H |n(pi - theta, phi + pi)>.
Complex antipodal_element(const SpinRep& rep, const CMatrix& h, double theta, double phi);
Complex antipodal_element(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double theta, double phi);

}  // namespace cspi
