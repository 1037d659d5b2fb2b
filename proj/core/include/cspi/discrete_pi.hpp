#pragma once

#include <string_view>
#include <vector>

#include "cspi/convergence.hpp"
#include "cspi/fock_space.hpp"
#include "cspi/su2_rep.hpp"

namespace cspi {

/// One-slice kernel used between coherent-state insertions.
///   exact_slice  <q| exp(-eps H) |q'>
///   first_order  <q| (1 - eps H) |q'>
///   qsymbol_exp  <q|q'> exp(-eps H_Q(q'))  (continuum-style: diagonal symbol only)
enum class SliceMode { exact_slice, first_order, qsymbol_exp };

SliceMode parse_slice_mode(std::string_view tag);
std::string_view to_string(SliceMode mode);

struct QuadratureNode {
  double theta = 0.0;  // spin nodes
  double phi = 0.0;
  Complex z;           // boson nodes
  double weight = 0.0; // measure weight including (2s+1)/4pi or 1/(pi h)
};

struct TransferMatrix {
  std::vector<QuadratureNode> nodes;
  CMatrix kernel;  // Q x Q, column q' carries the measure weight of node q'
  double epsilon = 0.0;
  int slices = 0;
  double identity_residual = 0.0;
};

struct SpinGrid {
  int n_theta = 0;
  int n_phi = 0;
};

/// Smallest grid the resolution of identity is exact on: n_theta = s + 1, n_phi = 2s + 1
/// (rounded up).
SpinGrid minimal_spin_grid(const SpinRep& rep);

/// Throws UnderResolvedQuadratureError when the grid's resolution-of-identity
/// residual exceeds 1e-8.
TransferMatrix spin_transfer_matrix(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int slices,
                                    SliceMode mode, int n_theta, int n_phi);

/// tr K^N; complex so callers can inspect the (vanishing) imaginary part.
Complex sliced_trace(const TransferMatrix& transfer);

/// Real part of tr K^N; throws NumericalError if |Im| > 1e-10 max(1, |Re|).
double spin_transfer_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int slices, SliceMode mode,
                       int n_theta, int n_phi);

struct PlaneGrid {
  int n_radial = 0;
  int n_angular = 0;
  double r_max = 0.0;
};

/// r_max^2 = h (n_max + 1 + 10 sqrt(n_max + 1) + 30), large enough that every
/// retained level is resolved; n_angular = n_max + 2; n_radial = 40.
PlaneGrid default_plane_grid(const FockSpace& fock);

/// max |(1/(pi h)) sum_q w_q P|z_q><z_q|P - 1| on the truncated space, Gauss-Legendre
/// in r^2 on [0, r_max^2] and uniform in arg z.
double plane_resolution_residual(const FockSpace& fock, const PlaneGrid& grid);

/// Boson analogue of spin_transfer_matrix over projected Glauber states. qsymbol_exp
/// uses <z|H|z>/<z|z> on the truncated space. Throws UnderResolvedQuadratureError
/// when the plane residual exceeds 1e-6 and NumericalError when the top retained
/// level still carries more than 1e-10 of the Boltzmann weight (cutoff leakage).
TransferMatrix bose_transfer_matrix(const FockSpace& fock, const CMatrix& hamiltonian, double beta, int slices,
                                    SliceMode mode, const PlaneGrid& grid);

double bose_transfer_z(const FockSpace& fock, const CMatrix& hamiltonian, double beta, int slices, SliceMode mode,
                       const PlaneGrid& grid);

struct ConvergenceConfig {
  int two_s = 2;
  DiagonalSpinHamiltonian hamiltonian = DiagonalSpinHamiltonian::polynomial({0.0, 0.0, 1.0});
  double beta = 1.0;
  /// Should be a doubling sequence for the Richardson estimates.
  std::vector<int> slices = {8, 16, 32, 64};
  std::vector<SliceMode> modes = {SliceMode::exact_slice, SliceMode::first_order, SliceMode::qsymbol_exp};
  int n_theta = 0;  // 0: 2s + 2
  int n_phi = 0;    // 0: 4s + 2
};

struct ConvergenceRow {
  int slices = 0;
  SliceMode mode = SliceMode::exact_slice;
  double z = 0.0;
  double dev_oracle = 0.0;
  double dev_continuum = 0.0;
};

struct ModeSummary {
  SliceMode mode = SliceMode::exact_slice;
  /// log-log slope of |Z_N - Z_oracle| against N; NaN when all errors vanish.
  double fitted_order = 0.0;
  LimitEstimate limit;
};

struct ConvergenceTable {
  double z_oracle = 0.0;
  double z_continuum = 0.0;
  std::vector<ConvergenceRow> rows;
  std::vector<ModeSummary> summaries;

  const ModeSummary& summary(SliceMode mode) const;
};

ConvergenceTable convergence_report(const ConvergenceConfig& config);

}  // namespace cspi
