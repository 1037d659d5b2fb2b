#include "cspi/continuum_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cspi/errors.hpp"
#include "cspi/quadrature.hpp"

namespace cspi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive and finite");
}

}  // namespace

std::string_view to_string(ContinuumMethod method) {
  switch (method) {
    case ContinuumMethod::qsymbol_integral: return "qsymbol_integral";
    case ContinuumMethod::substituted_integral: return "substituted_integral";
    case ContinuumMethod::naive_series: return "naive_series";
    case ContinuumMethod::mu_shifted_series: return "mu_shifted_series";
    case ContinuumMethod::winding_sum: return "winding_sum";
  }
  return "unknown";
}

ContinuumResult spin_continuum_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta) {
  require_beta(beta);
  const double s = rep.spin();
  double z = 0.0;
  for (int i = 0; i < rep.dim(); ++i) {
    const double x = rep.m(i) / s;
    // q_symbol at theta = acos(x) rather than the Chebyshev fit: no conditioning loss at large s
    z += std::exp(-beta * q_symbol(rep, h, std::acos(std::clamp(x, -1.0, 1.0))));
  }
  return {z, ContinuumMethod::qsymbol_integral, {{"two_s", rep.two_s()}, {"beta", beta}}};
}

ContinuumResult spin_substituted_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta) {
  require_beta(beta);
  if (!h.has_polynomial())
    throw InvalidArgument("spin_substituted_z: needs a polynomial Hamiltonian, not an eigenvalue list");
  const double s = rep.spin();
  double z = 0.0;
  for (int i = 0; i < rep.dim(); ++i) {
    const double x = rep.m(i) / s;
    z += std::exp(-beta * h.evaluate_polynomial(s * x));
  }
  return {z, ContinuumMethod::substituted_integral, {{"two_s", rep.two_s()}, {"beta", beta}}};
}

ContinuumResult bose_continuum_z(const BoseHubbardParams& params, int n_max, bool mu_shift) {
  require_beta(params.beta);
  if (!(params.U > 0.0)) throw InvalidArgument("bose_continuum_z: U must be positive (the sum diverges otherwise)");
  const double mu = mu_shift ? params.mu + 0.5 * params.U : params.mu;
  const double peak = mu / params.U;

  double z = 0.0;
  bool terminated = false;
  for (int n = 0; n <= n_max; ++n) {
    const double exponent = params.beta * (mu * n - 0.5 * params.U * n * static_cast<double>(n));
    const double term = std::exp(exponent);
    z += term;
    if (n > peak && term < 1e-16 * z) {
      terminated = true;
      break;
    }
  }
  if (!terminated) throw NumericalError("bose_continuum_z: series not converged within n_max = " + std::to_string(n_max));
  return {z,
          mu_shift ? ContinuumMethod::mu_shifted_series : ContinuumMethod::naive_series,
          {{"mu", params.mu}, {"U", params.U}, {"beta", params.beta}}};
}

ContinuumResult winding_sum_spin_z(const SpinRep& rep, const DiagonalSpinHamiltonian& h, double beta, int k_max,
                                   int grid_size) {
  require_beta(beta);
  if (k_max < 0) throw InvalidArgument("winding_sum_spin_z: k_max must be >= 0");
  if (grid_size <= 0) grid_size = 8 * (k_max + 1);

  const double s = rep.spin();
  const auto symbol = q_symbol_polynomial(rep, h);
  const auto panel = gauss_legendre(8);

  // y = s (1 - x); the comb sits at integer y, the window is [-1/2, 2s + 1/2].
  std::vector<double> fejer(k_max + 1);
  for (int k = 1; k <= k_max; ++k) fejer[k] = 1.0 - static_cast<double>(k) / (k_max + 1);

  const int periods = rep.two_s() + 1;
  const int panels = periods * grid_size;
  const double lo = -0.5;
  const double width = static_cast<double>(periods) / panels;

  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (std::size_t q = 0; q < panel.size(); ++q) {
      const double y = a + 0.5 * width * (panel.nodes[q] + 1.0);
      // sum over +-k of exp(2 pi i k y) folds into 2 cos(2 pi k y)
      double kernel = 1.0;
      for (int k = 1; k <= k_max; ++k) kernel += 2.0 * fejer[k] * std::cos(2.0 * kPi * k * y);
      const double x = 1.0 - y / s;
      integral += 0.5 * width * panel.weights[q] * kernel * std::exp(-beta * symbol(x));
    }
  }
  // dx = dy / s, and the overall factor s cancels it.
  return {integral,
          ContinuumMethod::winding_sum,
          {{"two_s", rep.two_s()}, {"beta", beta}, {"k_max", k_max}, {"grid_size", grid_size}}};
}

BerryPhase berry_phase_discrete(const SpinRep& rep, std::span<const SphericalPoint> path) {
  if (path.size() < 2) throw InvalidArgument("berry_phase_discrete: path needs at least two points");
  const auto& first = path.front();
  const auto& last = path.back();
  const double turns = (last.phi - first.phi) / (2.0 * kPi);
  const int winding = static_cast<int>(std::lround(turns));
  if (std::abs(first.theta - last.theta) > 1e-12 || std::abs(turns - winding) > 1e-9)
    throw InvalidArgument("berry_phase_discrete: path is not closed");

  std::vector<SpinCoherentState> states;
  states.reserve(path.size());
  for (const auto& p : path) states.push_back(coherent_state(rep, p.theta, p.phi));

  Complex phase{1.0, 0.0};
  double analytic = 0.0;
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    const Complex ov = overlap(states[j + 1], states[j]);
    if (std::abs(ov) < 1e-12) throw InvalidArgument("berry_phase_discrete: adjacent points are antipodal");
    phase *= ov / std::abs(ov);
    const double one_minus_cos =
        0.5 * ((1.0 - std::cos(path[j].theta)) + (1.0 - std::cos(path[j + 1].theta)));
    analytic += one_minus_cos * (path[j + 1].phi - path[j].phi);
  }
  return {phase, -kI * (rep.spin() * analytic), winding};
}

}  // namespace cspi
