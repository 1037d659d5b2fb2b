#include "cspi/fock_space.hpp"

#include <cmath>
#include <string>

#include "cspi/errors.hpp"

namespace cspi {

FockSpace build_fock(int n_max, double h) {
  if (n_max < 2) throw InvalidArgument("build_fock: n_max must be >= 2, got " + std::to_string(n_max));
  if (!(h > 0.0)) throw InvalidArgument("build_fock: representation index h must be positive");

  FockSpace fock;
  fock.n_max = n_max;
  fock.h = h;
  const int d = fock.dim();
  fock.a = CMatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) fock.a(k - 1, k) = std::sqrt(h * k);
  fock.a_dag = fock.a.adjoint();
  fock.n_op = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) fock.n_op(k, k) = h * k;
  return fock;
}

double poisson_tail(double mean, int n_max) {
  if (mean < 0.0) throw InvalidArgument("poisson_tail: negative mean");
  if (mean == 0.0) return 0.0;
  // Sum P(K = k) for k > n_max directly; avoids 1 - CDF cancellation.
  double tail = 0.0;
  const double log_mean = std::log(mean);
  for (int k = n_max + 1;; ++k) {
    const double term = std::exp(-mean + k * log_mean - std::lgamma(k + 1.0));
    tail += term;
    if (k > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (k > n_max + 100000) break;
  }
  return tail;
}

int default_cutoff(Complex z, double h) {
  const double lambda = std::norm(z) / h;
  return static_cast<int>(std::ceil(lambda + 10.0 * std::sqrt(lambda) + 15.0));
}

GlauberState glauber_state(const FockSpace& fock, Complex z, const GlauberOptions& options) {
  GlauberState state;
  state.z = z;
  const double lambda = std::norm(z) / fock.h;
  state.tail_bound = poisson_tail(lambda, fock.n_max);
  if (!options.allow_truncation && state.tail_bound > options.max_tail)
    throw TailBoundError(state.tail_bound, options.max_tail);

  state.amplitudes = CVector::Zero(fock.dim());
  if (z == Complex{0.0, 0.0}) {
    state.amplitudes[0] = 1.0;
    return state;
  }
  const double log_r = std::log(std::abs(z));
  const double arg = std::arg(z);
  const double log_h = std::log(fock.h);
  for (int k = 0; k < fock.dim(); ++k) {
    const double log_mag = -0.5 * lambda + k * log_r - 0.5 * (k * log_h + std::lgamma(k + 1.0));
    state.amplitudes[k] = std::polar(std::exp(log_mag), k * arg);
  }
  return state;
}

Complex glauber_overlap(Complex z1, Complex z2, double h) {
  return std::exp((-0.5 * (std::norm(z1) + std::norm(z2)) + std::conj(z1) * z2) / h);
}

Ordering parse_ordering(std::string_view tag) {
  if (tag == "normal") return Ordering::normal;
  if (tag == "weyl") return Ordering::weyl;
  if (tag == "naive_square" || tag == "naive-square") return Ordering::naive_square;
  throw InvalidArgument("unknown ordering tag '" + std::string(tag) + "' (expected normal, weyl, naive_square)");
}

std::string_view to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::normal: return "normal";
    case Ordering::weyl: return "weyl";
    case Ordering::naive_square: return "naive_square";
  }
  return "unknown";
}

double bose_hubbard_level(int k, double h, double mu, double U, Ordering ordering) {
  const double n = h * k;
  switch (ordering) {
    case Ordering::normal: return -mu * n + 0.5 * U * n * (n - h);
    case Ordering::weyl: return -mu * n + 0.5 * U * n * (n + h);
    case Ordering::naive_square: return -mu * n + 0.5 * U * n * n;
  }
  throw InvalidArgument("unknown ordering");
}

CMatrix bose_hubbard_hamiltonian(const FockSpace& fock, double mu, double U, Ordering ordering) {
  CMatrix hamiltonian = CMatrix::Zero(fock.dim(), fock.dim());
  for (int k = 0; k < fock.dim(); ++k) hamiltonian(k, k) = bose_hubbard_level(k, fock.h, mu, U, ordering);
  return hamiltonian;
}

}  // namespace cspi
