#pragma once

#include <climits>
#include <limits>
#include <span>
#include <vector>

#include "cspi/linalg.hpp"

namespace cspi {

/// Single-site Bose-Hubbard propagator problem <z_f| exp(-i H T/h) |z_i>.
struct PropagatorParams {
  double mu = 0.3;
  double U = 1.0;
  double T = 1.0;
  double h = 1.0;
  Complex z_i{0.7, 0.0};
  Complex z_f{0.7, 0.0};

  Complex coupling() const noexcept { return std::conj(z_f) * z_i; }
};

/// Phi(omega) = z_f* z_i e^{i(omega+mu)T} + (iT/2U) omega^2 - (|z_i|^2 + |z_f|^2)/2
Complex phi_omega(const PropagatorParams& p, Complex omega);
Complex phi_omega_first(const PropagatorParams& p, Complex omega);
Complex phi_omega_second(const PropagatorParams& p, Complex omega);

/// exp(Phi/h + i omega T/2 + i U h T/8)
Complex hs_integrand(const PropagatorParams& p, Complex omega);
/// sqrt(iT / (2 pi U h)), principal branch.
Complex hs_prefactor(const PropagatorParams& p);

struct ContourOptions {
  /// Angle of the right-hand ray; NaN selects pi/4 sign(T/U).
  double rotation_angle = std::numeric_limits<double>::quiet_NaN();
  /// Arm length; 0 selects lengths where the integrand has decayed below 1e-16 of its peak.
  double half_width = 0.0;
  /// Gauss-Legendre points on the coarsest level; 0 picks from the oscillation count.
  int n_points = 0;
};

struct ContourResult {
  Complex value;
  /// Refinement difference plus a rounding floor from sum |w f|.
  double error = 0.0;
  double rotation_angle = 0.0;
  int n_points = 0;
};

/// hs_prefactor * int d omega hs_integrand along a contour made of the rotated
/// ray omega = e^{i alpha} t (t >= 0), a short vertical link, and a horizontal
/// left arm Im omega = -sign(T) eta. A ray through the origin cannot serve as the
/// left arm: there exp(c e^{i omega T}) grows doubly exponentially.
///
/// Throws InvalidArgument for U <= 0, h <= 0, T == 0 and NumericalError when
/// refinement stops improving.
ContourResult hs_exact_propagator(const PropagatorParams& p, const ContourOptions& contour = {});

inline constexpr int kUnknownBranch = INT_MIN;

struct SaddleSolution {
  Complex omega;
  Complex phi_value;
  Complex phi_second;
  /// (mu + 2 omega) T / 2
  Complex delta;
  /// Lambert-W branch k with omega = (i/T) W_k(i U T z_f* z_i e^{i mu T}).
  int branch_id = kUnknownBranch;
  double newton_residual = 0.0;
  bool degenerate = false;
};

struct SaddleSearch {
  int n_starts = 32;
  /// Half side of the multistart box around the origin; 0 picks from branch_range.
  double box_radius = 0.0;
  double tol = 1e-14;
  int max_iter = 100;
  int branch_min = -2;
  int branch_max = 2;
};

struct SaddleDiagnostics {
  int diverged_starts = 0;
  int lambert_seeds = 0;
};

/// Roots of omega + U z_f* z_i e^{i(omega+mu)T} = 0, sorted by Re Phi descending.
/// Throws NumericalError when nothing converges.
std::vector<SaddleSolution> solve_saddles(const PropagatorParams& p, const SaddleSearch& search = {},
                                          SaddleDiagnostics* diagnostics = nullptr);

/// The branch-0 saddle, the one that tends to omega = 0 as z_f* z_i -> 0.
const SaddleSolution& principal_saddle(std::span<const SaddleSolution> saddles);

/// Principal Lambert W or branch k, by Halley iteration.
Complex lambert_w(Complex x, int branch = 0);

struct SemiclassicalOptions {
  /// Include the -i Delta correction in the exponent.
  bool anomaly_phase = true;
  /// Saddles with Re Phi/h more than this below the maximum are dropped.
  double window = 30.0;
};

/// sum_s sqrt(iT/(U Phi''_s)) exp(Phi_s/h + (i/2)(omega_s+mu)T - i Delta_s) over the
/// given saddles. The square root is principal: it tends to 1 in the free limit.
/// Throws DegenerateSaddleError when a summed saddle is degenerate.
Complex semiclassical_propagator(std::span<const SaddleSolution> saddles, const PropagatorParams& p,
                                 const SemiclassicalOptions& options = {});

/// Boundary and bulk pieces of Phi on the stationary trajectory for fixed omega:
/// z(t) = z_i e^{i(omega+mu)t}, zbar(t) = z_f* e^{i(omega+mu)(T-t)}, with the
/// decoupled Hamiltonian -(mu+omega) zbar z - omega^2/(2U).
struct ActionDecomposition {
  Complex gamma;
  Complex s_bulk;
};

/// s_bulk is integrated numerically over t with n_time Gauss-Legendre points.
ActionDecomposition decompose_action(const PropagatorParams& p, Complex omega, int n_time = 64);

/// Exact propagator from the operator side, on a Fock space with the default cutoff.
Complex exact_bose_propagator(const PropagatorParams& p, bool weyl);

struct OrderingRow {
  double h = 0.0;
  Complex k_sc;
  Complex k_sc_no_anomaly;
  Complex k_weyl;
  Complex k_normal;
  double rel_err_weyl = 0.0;
  double rel_err_normal = 0.0;
  double rel_err_weyl_no_anomaly = 0.0;
  double rel_err_normal_no_anomaly = 0.0;
};

/// Semiclassical propagator from the principal saddle against the exact
/// propagators of the Weyl and normal orderings, for each h (strictly decreasing).
std::vector<OrderingRow> ordering_comparison(const PropagatorParams& p, std::span<const double> h_sweep);

struct OffsetFit {
  /// Mean of numerator[i] / denominator[i].
  Complex ratio;
  /// max_i |numerator[i]/denominator[i] - ratio|
  double spread = 0.0;
};

OffsetFit fit_constant_offset(std::span<const Complex> numerator, std::span<const Complex> denominator);

}  // namespace cspi
