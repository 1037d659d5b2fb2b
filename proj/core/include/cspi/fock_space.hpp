#pragma once

#include <string_view>

#include "cspi/linalg.hpp"

namespace cspi {

/// Boson Fock space truncated at occupation n_max, with [a, a^dagger] = h.
struct FockSpace {
  int n_max = 0;
  double h = 1.0;
  CMatrix a;
  CMatrix a_dag;
  CMatrix n_op;  // a^dagger a = diag(h k)

  int dim() const noexcept { return n_max + 1; }
};

/// Throws InvalidArgument for n_max < 2 or h <= 0.
FockSpace build_fock(int n_max, double h = 1.0);

/// P(K > n_max) for K ~ Poisson(mean); the norm defect of a Glauber state
/// truncated at n_max with mean = |z|^2/h.
double poisson_tail(double mean, int n_max);

/// ceil(lambda + 10 sqrt(lambda) + 15), lambda = |z|^2/h.
int default_cutoff(Complex z, double h);

struct GlauberState {
  Complex z;
  CVector amplitudes;
  double tail_bound = 0.0;
};

struct GlauberOptions {
  double max_tail = 1e-8;
  /// Keep a heavily truncated state (its projection onto the retained levels).
  bool allow_truncation = false;
};

/// e^{-|z|^2/(2h)} sum_k z^k / sqrt(h^k k!) |k>.
///
/// Throws TailBoundError when the truncated Poisson tail exceeds options.max_tail
/// unless options.allow_truncation is set.
GlauberState glauber_state(const FockSpace& fock, Complex z, const GlauberOptions& options = {});

/// Closed-form <z1|z2> of untruncated Glauber states.
Complex glauber_overlap(Complex z1, Complex z2, double h);

enum class Ordering { normal, weyl, naive_square };

/// Accepts "normal", "weyl", "naive_square" (also "naive-square").
Ordering parse_ordering(std::string_view tag);
std::string_view to_string(Ordering ordering);

struct BoseHubbardParams {
  double mu = 0.0;
  double U = 1.0;
  double beta = 1.0;
};

/// Energy of occupation k (n = h k):
///   normal        -mu n + U/2 n (n - h)
///   weyl          -mu n + U/2 n (n + h)
///   naive_square  -mu n + U/2 n^2
double bose_hubbard_level(int k, double h, double mu, double U, Ordering ordering);

/// Diagonal single-site Bose-Hubbard Hamiltonian on the truncated space.
CMatrix bose_hubbard_hamiltonian(const FockSpace& fock, double mu, double U, Ordering ordering);

}  // namespace cspi
