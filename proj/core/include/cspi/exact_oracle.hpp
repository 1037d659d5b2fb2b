#pragma once

#include "cspi/fock_space.hpp"
#include "cspi/linalg.hpp"

namespace cspi {

/// tr exp(-beta H) for Hermitian H.
double partition_function(const CMatrix& h, double beta, const HermitianPolicy& policy = {});
double partition_function(const SpectralDecomposition& spectrum, double beta);

/// <psi_f| exp(-i H T / h) |psi_i> by spectral decomposition.
///
/// The evolution operator is checked for unitarity (1e-10) before contraction.
Complex propagator(const CMatrix& hamiltonian, double T, double h, const CVector& psi_i, const CVector& psi_f,
                   const HermitianPolicy& policy = {});

/// Operator-language Bose-Hubbard partition function on a Fock space of
/// sufficient size; grows the cutoff until the top level's Boltzmann weight is
/// below 1e-17 of the running sum.
struct BoseOracleResult {
  double value = 0.0;
  int n_max = 0;
};
BoseOracleResult bose_partition_function(double mu, double U, double beta, Ordering ordering, double h = 1.0,
                                         int n_max_start = 16);

}  // namespace cspi
