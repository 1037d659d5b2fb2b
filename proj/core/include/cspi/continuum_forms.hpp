#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "cspi/fock_space.hpp"
#include "cspi/su2_rep.hpp"

namespace cspi {

// Closed-form values of the time-continuous path integral, with the overall
// measure constant set to 1.

enum class ContinuumMethod { qsymbol_integral, substituted_integral, naive_series, mu_shifted_series, winding_sum };

std::string_view to_string(ContinuumMethod method);

struct ContinuumResult {
  double value = 0.0;
  ContinuumMethod method = ContinuumMethod::qsymbol_integral;
  std::map<std::string, double> parameters;
};

/// sum_{m=-s}^{s} exp(-beta H(m/s)), H(x) the Q-symbol of H in x = cos(theta).
ContinuumResult spin_continuum_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta);

/// Same sum with the operator S_z replaced by the scalar s x inside the
/// polynomial: H_sub(x) = sum_k c_k (s x)^k. Rejects eigenvalue-list Hamiltonians.
ContinuumResult spin_substituted_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta);

/// sum_{n>=0} exp(beta mu n - beta U n^2 / 2), capped at n_max, terminated once a
/// term is below 1e-16 of the running sum on the decaying side. With mu_shift the
/// chemical potential is replaced by mu + U/2.
ContinuumResult bose_continuum_z(const BoseHubbardParams& params, int n_max = 100000, bool mu_shift = false);

/// Fejer-averaged winding-sector sum
///   s * sum_{|k|<=k_max} (1 - |k|/(k_max+1)) int dx exp(2 pi i k s (1-x) - beta H(x)).
/// The x window is [-1 - 1/(2s), 1 + 1/(2s)], i.e. a whole number of comb periods
/// centred on the poles, so the n = 0 and n = 2s teeth carry full weight; H(x) is
/// continued outside [-1, 1] as the Q-symbol polynomial. grid_size is the number of
/// 8-point Gauss-Legendre panels per comb period (0 picks 8 (k_max + 1)).
ContinuumResult winding_sum_spin_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int k_max,
                                   int grid_size = 0);

struct SphericalPoint {
  double theta = 0.0;
  double phi = 0.0;  // unwrapped; differences define the azimuthal winding
};

struct BerryPhase {
  /// prod_j <n_{j+1}|n_j> / |<n_{j+1}|n_j>|
  Complex overlap_phase;
  /// -i s sum_j (1 - cos theta_j) (phi_{j+1} - phi_j)
  Complex analytic_exponent;
  /// Net number of 2 pi turns in phi along the path.
  int winding = 0;
};

/// Closed path (first point == last point, up to 2 pi in phi); throws for
/// adjacent antipodal points.
BerryPhase berry_phase_discrete(const SpinRep& rep, std::span<const SphericalPoint> path);

}  // namespace cspi
