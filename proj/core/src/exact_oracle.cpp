#include "cspi/exact_oracle.hpp"

#include <cmath>

#include "cspi/errors.hpp"

namespace cspi {

double partition_function(const SpectralDecomposition& spectrum, double beta) {
  double z = 0.0;
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) z += std::exp(-beta * spectrum.eigenvalues[i]);
  return z;
}

double partition_function(const CMatrix& h, double beta, const HermitianPolicy& policy) {
  if (!(beta > 0.0)) throw InvalidArgument("partition_function: beta must be positive");
  return partition_function(decompose_hermitian(h, policy), beta);
}

Complex propagator(const CMatrix& hamiltonian, double T, double h, const CVector& psi_i, const CVector& psi_f,
                   const HermitianPolicy& policy) {
  if (!std::isfinite(T)) throw InvalidArgument("propagator: T must be finite");
  if (!(h > 0.0)) throw InvalidArgument("propagator: h must be positive");
  if (psi_i.size() != hamiltonian.rows() || psi_f.size() != hamiltonian.rows())
    throw InvalidArgument("propagator: state dimension mismatch");

  const auto spectrum = decompose_hermitian(hamiltonian, policy);
  const CMatrix evolution = unitary_exp(spectrum, T / h);
  const double unitarity = max_abs(evolution.adjoint() * evolution - CMatrix::Identity(evolution.rows(), evolution.cols()));
  if (unitarity > 1e-10) throw NumericalError("propagator: evolution operator not unitary (" + std::to_string(unitarity) + ")");
  return psi_f.dot(evolution * psi_i);
}

BoseOracleResult bose_partition_function(double mu, double U, double beta, Ordering ordering, double h,
                                         int n_max_start) {
  if (!(U > 0.0)) throw InvalidArgument("bose_partition_function: U must be positive");
  if (!(beta > 0.0)) throw InvalidArgument("bose_partition_function: beta must be positive");
  for (int n_max = std::max(n_max_start, 2); n_max <= 1 << 14; n_max *= 2) {
    const auto fock = build_fock(n_max, h);
    const auto spectrum = decompose_hermitian(bose_hubbard_hamiltonian(fock, mu, U, ordering));
    const double z = partition_function(spectrum, beta);
    const double top = std::exp(-beta * bose_hubbard_level(n_max, h, mu, U, ordering));
    const double below = std::exp(-beta * bose_hubbard_level(n_max - 1, h, mu, U, ordering));
    if (top < 1e-17 * z && top < below) return {z, n_max};
  }
  throw NumericalError("bose_partition_function: Boltzmann weights do not decay within the cutoff range");
}

}  // namespace cspi
