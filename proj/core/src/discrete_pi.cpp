#include "cspi/discrete_pi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cspi/continuum_forms.hpp"
#include "cspi/errors.hpp"
#include "cspi/exact_oracle.hpp"
#include "cspi/quadrature.hpp"

namespace cspi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpinResidualLimit = 1e-8;
constexpr double kPlaneResidualLimit = 1e-6;

void require_slicing(double beta, int slices) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (slices < 1) throw InvalidArgument("number of slices must be >= 1");
}

// Operator inserted between bra and ket for the two matrix-element modes.
CMatrix slice_operator(const CMatrix& hamiltonian, double epsilon, SliceMode mode) {
  const Eigen::Index d = hamiltonian.rows();
  if (mode == SliceMode::first_order) return CMatrix::Identity(d, d) - epsilon * hamiltonian;
  const auto spectrum = decompose_hermitian(hamiltonian);
  return spectrum.apply([epsilon](double lambda) { return Complex{std::exp(-epsilon * lambda), 0.0}; });
}

// kernel(q, q') = <q|O|q'> w_q' or <q|q'> exp(-eps symbol_q') w_q'
CMatrix assemble_kernel(const CMatrix& states, const CMatrix& hamiltonian, const std::vector<double>& weights,
                        double epsilon, SliceMode mode) {
  const Eigen::Index q = states.cols();
  CMatrix kernel;
  if (mode == SliceMode::qsymbol_exp) {
    kernel = states.adjoint() * states;
    for (Eigen::Index j = 0; j < q; ++j) {
      const CVector col = states.col(j);
      const double symbol = col.dot(hamiltonian * col).real() / col.squaredNorm();
      kernel.col(j) *= std::exp(-epsilon * symbol);
    }
  } else {
    kernel = states.adjoint() * slice_operator(hamiltonian, epsilon, mode) * states;
  }
  for (Eigen::Index j = 0; j < q; ++j) kernel.col(j) *= weights[j];
  return kernel;
}

double identity_residual(const CMatrix& states, const std::vector<double>& weights) {
  CMatrix acc = states * Eigen::Map<const RVector>(weights.data(), weights.size()).cast<Complex>().asDiagonal() *
                states.adjoint();
  return max_abs(acc - CMatrix::Identity(acc.rows(), acc.cols()));
}

double real_trace(const TransferMatrix& transfer) {
  const Complex tr = sliced_trace(transfer);
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real())))
    throw NumericalError("sliced trace has imaginary part " + std::to_string(tr.imag()));
  return tr.real();
}

}  // namespace

SliceMode parse_slice_mode(std::string_view tag) {
  if (tag == "exact_slice" || tag == "exact-slice") return SliceMode::exact_slice;
  if (tag == "first_order" || tag == "first-order") return SliceMode::first_order;
  if (tag == "qsymbol_exp" || tag == "qsymbol-exp") return SliceMode::qsymbol_exp;
  throw InvalidArgument("unknown slice mode '" + std::string(tag) + "' (expected exact_slice, first_order, qsymbol_exp)");
}

std::string_view to_string(SliceMode mode) {
  switch (mode) {
    case SliceMode::exact_slice: return "exact_slice";
    case SliceMode::first_order: return "first_order";
    case SliceMode::qsymbol_exp: return "qsymbol_exp";
  }
  return "unknown";
}

SpinGrid minimal_spin_grid(const SpinRep& rep) {
  // Gauss-Legendre with n nodes integrates degree 2n - 1 in cos(theta); overlaps have degree 2s
  return {(rep.two_s() + 2) / 2, rep.two_s() + 1};
}

TransferMatrix spin_transfer_matrix(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int slices,
                                    SliceMode mode, int n_theta, int n_phi) {
  require_slicing(beta, slices);
  if (n_theta < 1 || n_phi < 1) throw InvalidArgument("spin_transfer_matrix: quadrature orders must be >= 1");

  const auto polar = gauss_legendre(n_theta);
  const auto azimuth = uniform_periodic(n_phi);
  const double measure = rep.dim() / (4.0 * kPi);

  TransferMatrix transfer;
  transfer.epsilon = beta / slices;
  transfer.slices = slices;
  const int q = n_theta * n_phi;
  CMatrix states(rep.dim(), q);
  std::vector<double> weights(q);
  int col = 0;
  for (std::size_t a = 0; a < polar.size(); ++a) {
    const double theta = std::acos(std::clamp(polar.nodes[a], -1.0, 1.0));
    for (std::size_t b = 0; b < azimuth.size(); ++b, ++col) {
      const double w = measure * polar.weights[a] * azimuth.weights[b];
      states.col(col) = coherent_state(rep, theta, azimuth.nodes[b]).amplitudes;
      weights[col] = w;
      transfer.nodes.push_back({theta, azimuth.nodes[b], {}, w});
    }
  }

  transfer.identity_residual = identity_residual(states, weights);
  if (transfer.identity_residual > kSpinResidualLimit)
    throw UnderResolvedQuadratureError(transfer.identity_residual, kSpinResidualLimit);

  transfer.kernel = assemble_kernel(states, h.matrix(rep), weights, transfer.epsilon, mode);
  return transfer;
}

Complex sliced_trace(const TransferMatrix& transfer) { return matrix_power(transfer.kernel, transfer.slices).trace(); }

double spin_transfer_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int slices, SliceMode mode,
                       int n_theta, int n_phi) {
  return real_trace(spin_transfer_matrix(rep, h, beta, slices, mode, n_theta, n_phi));
}

PlaneGrid default_plane_grid(const FockSpace& fock) {
  const double levels = fock.n_max + 1.0;
  const double r2 = fock.h * (levels + 10.0 * std::sqrt(levels) + 30.0);
  return {40, fock.n_max + 2, std::sqrt(r2)};
}

namespace {

struct PlaneNodes {
  CMatrix states;
  std::vector<double> weights;
  std::vector<QuadratureNode> nodes;
};

PlaneNodes plane_nodes(const FockSpace& fock, const PlaneGrid& grid) {
  if (grid.n_radial < 1 || grid.n_angular < 1 || !(grid.r_max > 0.0))
    throw InvalidArgument("plane grid needs n_radial, n_angular >= 1 and r_max > 0");
  // d^2z = (1/2) d(r^2) d(arg z); measure 1/(pi h)
  const auto radial = gauss_legendre(grid.n_radial, 0.0, grid.r_max * grid.r_max);
  const auto angular = uniform_periodic(grid.n_angular);
  const GlauberOptions projected{.max_tail = 1.0, .allow_truncation = true};

  PlaneNodes out;
  const int q = grid.n_radial * grid.n_angular;
  out.states.resize(fock.dim(), q);
  out.weights.resize(q);
  int col = 0;
  for (std::size_t a = 0; a < radial.size(); ++a) {
    const double r = std::sqrt(radial.nodes[a]);
    for (std::size_t b = 0; b < angular.size(); ++b, ++col) {
      const Complex z = std::polar(r, angular.nodes[b]);
      const double w = 0.5 * radial.weights[a] * angular.weights[b] / (kPi * fock.h);
      out.states.col(col) = glauber_state(fock, z, projected).amplitudes;
      out.weights[col] = w;
      out.nodes.push_back({0.0, 0.0, z, w});
    }
  }
  return out;
}

}  // namespace

double plane_resolution_residual(const FockSpace& fock, const PlaneGrid& grid) {
  const auto nodes = plane_nodes(fock, grid);
  return identity_residual(nodes.states, nodes.weights);
}

TransferMatrix bose_transfer_matrix(const FockSpace& fock, const CMatrix& hamiltonian, double beta, int slices,
                                    SliceMode mode, const PlaneGrid& grid) {
  require_slicing(beta, slices);
  if (hamiltonian.rows() != fock.dim() || hamiltonian.cols() != fock.dim())
    throw InvalidArgument("bose_transfer_matrix: Hamiltonian dimension does not match the Fock space");

  // cutoff leakage: the truncated spectrum must already carry all of the weight
  const auto spectrum = decompose_hermitian(hamiltonian);
  const double z_exact = partition_function(spectrum, beta);
  const double top_weight = std::exp(-beta * hamiltonian(fock.n_max, fock.n_max).real());
  if (top_weight > 1e-10 * z_exact)
    throw NumericalError("cutoff leakage: level n_max carries " + std::to_string(top_weight / z_exact) +
                         " of the Boltzmann weight; raise n_max");

  auto nodes = plane_nodes(fock, grid);
  TransferMatrix transfer;
  transfer.epsilon = beta / slices;
  transfer.slices = slices;
  transfer.identity_residual = identity_residual(nodes.states, nodes.weights);
  if (transfer.identity_residual > kPlaneResidualLimit)
    throw UnderResolvedQuadratureError(transfer.identity_residual, kPlaneResidualLimit);

  transfer.kernel = assemble_kernel(nodes.states, hamiltonian, nodes.weights, transfer.epsilon, mode);
  transfer.nodes = std::move(nodes.nodes);
  return transfer;
}

double bose_transfer_z(const FockSpace& fock, const CMatrix& hamiltonian, double beta, int slices, SliceMode mode,
                       const PlaneGrid& grid) {
  return real_trace(bose_transfer_matrix(fock, hamiltonian, beta, slices, mode, grid));
}

const ModeSummary& ConvergenceTable::summary(SliceMode mode) const {
  for (const auto& s : summaries)
    if (s.mode == mode) return s;
  throw InvalidArgument("convergence table has no rows for mode " + std::string(to_string(mode)));
}

ConvergenceTable convergence_report(const ConvergenceConfig& config) {
  if (config.slices.empty() || config.modes.empty()) throw InvalidArgument("convergence_report: empty sweep");
  const SpinRep rep(config.two_s);
  const int n_theta = config.n_theta > 0 ? config.n_theta : rep.two_s() + 2;
  const int n_phi = config.n_phi > 0 ? config.n_phi : 2 * rep.two_s() + 2;

  ConvergenceTable table;
  table.z_oracle = partition_function(config.hamiltonian.matrix(rep), config.beta);
  table.z_continuum = spin_continuum_z(rep, config.hamiltonian, config.beta).value;

  for (const auto mode : config.modes) {
    std::vector<double> values, errors, ns;
    for (const int n : config.slices) {
      const double z = spin_transfer_z(rep, config.hamiltonian, config.beta, n, mode, n_theta, n_phi);
      table.rows.push_back({n, mode, z, std::abs(z - table.z_oracle), std::abs(z - table.z_continuum)});
      values.push_back(z);
      errors.push_back(std::abs(z - table.z_oracle));
      ns.push_back(static_cast<double>(n));
    }
    ModeSummary summary;
    summary.mode = mode;
    const bool resolved = std::any_of(errors.begin(), errors.end(), [](double e) { return e > 1e-12; });
    summary.fitted_order = (resolved && ns.size() >= 2) ? log_log_slope(ns, errors)
                                                        : std::numeric_limits<double>::quiet_NaN();
    if (values.size() >= 2) summary.limit = richardson_limit(values);
    else summary.limit = {values.front(), std::numeric_limits<double>::infinity()};
    table.summaries.push_back(summary);
  }
  return table;
}

}  // namespace cspi
