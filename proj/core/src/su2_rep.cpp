#include "cspi/su2_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cspi/errors.hpp"
#include "cspi/quadrature.hpp"

namespace cspi {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phi(double phi) {
  double wrapped = std::fmod(phi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  if (wrapped >= 2.0 * kPi) wrapped = 0.0;
  return wrapped;
}

double checked_theta(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("coherent_state: theta is not finite");
  if (theta < -1e-12 || theta > kPi + 1e-12)
    throw InvalidArgument("coherent_state: theta must lie in [0, pi], got " + std::to_string(theta));
  return std::clamp(theta, 0.0, kPi);
}

}  // namespace

SpinRep::SpinRep(int two_s) : two_s_(two_s) {
  if (two_s == 0) throw TrivialRepresentationError();
  if (two_s < 0) throw InvalidArgument("SpinRep: two_s must be positive");

  const int d = dim();
  const double s = spin();
  sz_ = CMatrix::Zero(d, d);
  s_plus_ = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) sz_(i, i) = m(i);
  // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; index i-1 holds m+1.
  for (int i = 1; i < d; ++i) s_plus_(i - 1, i) = std::sqrt(s * (s + 1.0) - m(i) * (m(i) + 1.0));
  s_minus_ = s_plus_.adjoint();
  sx_ = 0.5 * (s_plus_ + s_minus_);
  sy_ = (s_plus_ - s_minus_) / (2.0 * kI);
  sy_spectrum_ = decompose_hermitian(sy_);
}

SpinRep build_spin_rep(int two_s) { return SpinRep(two_s); }

SpinCoherentState coherent_state(const SpinRep& rep, double theta, double phi) {
  if (!std::isfinite(phi)) throw InvalidArgument("coherent_state: phi is not finite");
  SpinCoherentState state;
  state.theta = checked_theta(theta);
  state.phi = wrap_phi(phi);

  const auto& spec = rep.sy_spectrum();
  // exp(-i theta S_y) |s> = V exp(-i theta Lambda) V^dagger e_0
  CVector rotated = spec.eigenvectors.adjoint().col(0);
  for (Eigen::Index i = 0; i < rotated.size(); ++i) rotated[i] *= std::exp(-kI * (state.theta * spec.eigenvalues[i]));
  rotated = spec.eigenvectors * rotated;
  for (int i = 0; i < rep.dim(); ++i) rotated[i] *= std::exp(-kI * (state.phi * rep.m(i)));
  state.amplitudes = std::move(rotated);
  return state;
}

Complex overlap(const SpinCoherentState& bra, const SpinCoherentState& ket) {
  return bra.amplitudes.dot(ket.amplitudes);  // Eigen's dot conjugates the left operand
}

DiagonalSpinHamiltonian DiagonalSpinHamiltonian::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  DiagonalSpinHamiltonian h;
  h.coeffs_ = std::move(coeffs);
  return h;
}

DiagonalSpinHamiltonian DiagonalSpinHamiltonian::from_eigenvalues(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) throw InvalidArgument("DiagonalSpinHamiltonian: empty eigenvalue list");
  DiagonalSpinHamiltonian h;
  h.eigenvalues_ = std::move(eigenvalues);
  return h;
}

int DiagonalSpinHamiltonian::degree(const SpinRep& rep) const {
  if (!has_polynomial()) return rep.two_s();
  int d = static_cast<int>(coeffs_.size()) - 1;
  while (d > 0 && coeffs_[d] == 0.0) --d;
  return d;
}

double DiagonalSpinHamiltonian::evaluate_polynomial(double x) const {
  if (!has_polynomial()) throw InvalidArgument("Hamiltonian has no polynomial form");
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> DiagonalSpinHamiltonian::eigenvalues(const SpinRep& rep) const {
  if (!has_polynomial()) {
    if (static_cast<int>(eigenvalues_.size()) != rep.dim())
      throw InvalidArgument("eigenvalue list length " + std::to_string(eigenvalues_.size()) +
                            " does not match dimension " + std::to_string(rep.dim()));
    return eigenvalues_;
  }
  std::vector<double> out(rep.dim());
  for (int i = 0; i < rep.dim(); ++i) out[i] = evaluate_polynomial(rep.m(i));
  return out;
}

CMatrix DiagonalSpinHamiltonian::matrix(const SpinRep& rep) const {
  const auto ev = eigenvalues(rep);
  CMatrix h = CMatrix::Zero(rep.dim(), rep.dim());
  for (int i = 0; i < rep.dim(); ++i) h(i, i) = ev[i];
  return h;
}

double q_symbol(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double theta, double phi) {
  const auto ev = h.eigenvalues(rep);
  const auto state = coherent_state(rep, theta, phi);
  double value = 0.0;
  for (int i = 0; i < rep.dim(); ++i) value += std::norm(state.amplitudes[i]) * ev[i];
  return value;
}

double q_symbol(const SpinRep& rep, const CMatrix& h, double theta, double phi) {
  if (h.rows() != rep.dim() || h.cols() != rep.dim()) throw InvalidArgument("q_symbol: dimension mismatch");
  const double off = off_diagonal_max(h);
  if (off > 1e-12) throw NonDiagonalError(off);
  const auto state = coherent_state(rep, theta, phi);
  return state.amplitudes.dot(h * state.amplitudes).real();
}

double QSymbolPolynomial::operator()(double x) const {
  // Clenshaw for sum_k c_k T_k(x)
  double b1 = 0.0, b2 = 0.0;
  for (int k = degree(); k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + chebyshev_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (chebyshev_.empty() ? 0.0 : chebyshev_[0]);
}

std::vector<double> QSymbolPolynomial::monomial_coefficients() const {
  const int d = degree();
  if (d < 0) return {};
  std::vector<double> out(d + 1, 0.0);
  // T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}, tracked in power basis
  std::vector<double> prev(d + 1, 0.0), cur(d + 1, 0.0);
  prev[0] = 1.0;
  out[0] += chebyshev_[0];
  if (d >= 1) {
    cur[1] = 1.0;
    out[1] += chebyshev_[1];
  }
  for (int k = 1; k < d; ++k) {
    std::vector<double> next(d + 1, 0.0);
    for (int j = 0; j < d; ++j) next[j + 1] += 2.0 * cur[j];
    for (int j = 0; j <= d; ++j) next[j] -= prev[j];
    for (int j = 0; j <= d; ++j) out[j] += chebyshev_[k + 1] * next[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

QSymbolPolynomial q_symbol_polynomial(const SpinRep& rep, const DiagonalSpinHamiltonian& h) {
  const int degree = rep.two_s();
  const int n = degree + 1;
  // Chebyshev nodes of the first kind; discrete orthogonality gives exact coefficients.
  std::vector<double> samples(n);
  std::vector<double> nodes(n);
  for (int j = 0; j < n; ++j) {
    nodes[j] = std::cos(kPi * (j + 0.5) / n);
    samples[j] = q_symbol(rep, h, std::acos(nodes[j]));
  }
  std::vector<double> coeffs(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += samples[j] * std::cos(kPi * k * (j + 0.5) / n);
    coeffs[k] = (k == 0 ? 1.0 : 2.0) * acc / n;
  }
  return QSymbolPolynomial(std::move(coeffs));
}

double resolution_of_identity_residual(const SpinRep& rep, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw InvalidArgument("resolution_of_identity_residual: need n_theta, n_phi >= 1");
  const auto polar = gauss_legendre(n_theta);
  const auto azimuth = uniform_periodic(n_phi);
  const double measure = rep.dim() / (4.0 * kPi);

  CMatrix acc = CMatrix::Zero(rep.dim(), rep.dim());
  for (std::size_t a = 0; a < polar.size(); ++a) {
    const double theta = std::acos(std::clamp(polar.nodes[a], -1.0, 1.0));
    for (std::size_t b = 0; b < azimuth.size(); ++b) {
      const auto state = coherent_state(rep, theta, azimuth.nodes[b]);
      acc += (measure * polar.weights[a] * azimuth.weights[b]) * (state.amplitudes * state.amplitudes.adjoint());
    }
  }
  return max_abs(acc - CMatrix::Identity(rep.dim(), rep.dim()));
}

Complex antipodal_element(const SpinRep& rep, const CMatrix& h, double theta, double phi) {
  if (h.rows() != rep.dim() || h.cols() != rep.dim()) throw InvalidArgument("antipodal_element: dimension mismatch");
  const auto north = coherent_state(rep, theta, phi);
  const auto south = coherent_state(rep, kPi - checked_theta(theta), phi + kPi);
  return north.amplitudes.dot(h * south.amplitudes);
}

Complex antipodal_element(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double theta, double phi) {
  return antipodal_element(rep, h.matrix(rep), theta, phi);
}

}  // namespace cspi
