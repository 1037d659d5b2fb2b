#include "cspi/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cspi/errors.hpp"
#include "cspi/exact_oracle.hpp"
#include "cspi/fock_space.hpp"
#include "cspi/quadrature.hpp"

namespace cspi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDecayLog = 40.0;  // e^-40 < 1e-16 ... with margin

void require_params(const PropagatorParams& p) {
  if (!(p.U > 0.0)) throw InvalidArgument("propagator parameters: U must be positive");
  if (!(p.h > 0.0)) throw InvalidArgument("propagator parameters: h must be positive");
  if (p.T == 0.0 || !std::isfinite(p.T)) throw InvalidArgument("propagator parameters: T must be finite and nonzero");
}

Complex consistency(const PropagatorParams& p, Complex omega) {
  return omega + p.U * p.coupling() * std::exp(kI * (omega + p.mu) * p.T);
}

Complex consistency_derivative(const PropagatorParams& p, Complex omega) {
  return 1.0 + kI * p.T * p.U * p.coupling() * std::exp(kI * (omega + p.mu) * p.T);
}

struct Segment {
  Complex start;
  Complex end;
  int panels;
};

struct SegmentSum {
  Complex value;
  double abs_sum = 0.0;
  double peak = 0.0;
};

SegmentSum integrate_segments(const PropagatorParams& p, const std::vector<Segment>& segments, int refine,
                              const QuadratureRule& rule) {
  SegmentSum out;
  for (const auto& seg : segments) {
    const int panels = seg.panels * refine;
    const Complex span = seg.end - seg.start;
    for (int k = 0; k < panels; ++k) {
      const double t0 = static_cast<double>(k) / panels;
      const double dt = 1.0 / panels;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = t0 + 0.5 * dt * (rule.nodes[q] + 1.0);
        const Complex omega = seg.start + t * span;
        const Complex f = hs_integrand(p, omega);
        const Complex term = (0.5 * dt * rule.weights[q]) * span * f;
        out.value += term;
        out.abs_sum += std::abs(term);
        out.peak = std::max(out.peak, std::abs(f));
      }
    }
  }
  return out;
}

}  // namespace

Complex phi_omega(const PropagatorParams& p, Complex omega) {
  return p.coupling() * std::exp(kI * (omega + p.mu) * p.T) + (kI * p.T / (2.0 * p.U)) * omega * omega -
         0.5 * (std::norm(p.z_i) + std::norm(p.z_f));
}

Complex phi_omega_first(const PropagatorParams& p, Complex omega) {
  return (kI * p.T / p.U) * consistency(p, omega);
}

Complex phi_omega_second(const PropagatorParams& p, Complex omega) {
  return -p.T * p.T * p.coupling() * std::exp(kI * (omega + p.mu) * p.T) + kI * p.T / p.U;
}

Complex hs_integrand(const PropagatorParams& p, Complex omega) {
  return std::exp(phi_omega(p, omega) / p.h + 0.5 * kI * omega * p.T + kI * p.U * p.h * p.T / 8.0);
}

Complex hs_prefactor(const PropagatorParams& p) { return std::sqrt(kI * p.T / (2.0 * kPi * p.U * p.h)); }

ContourResult hs_exact_propagator(const PropagatorParams& p, const ContourOptions& contour) {
  require_params(p);
  const double sigma = p.T > 0.0 ? 1.0 : -1.0;
  const double alpha = std::isnan(contour.rotation_angle) ? sigma * kPi / 4.0 : contour.rotation_angle;
  if (!(sigma * alpha > 0.0 && sigma * alpha < kPi / 2.0))
    throw InvalidArgument("hs_exact_propagator: rotation angle must lie strictly inside the decaying quadrant");
  if (contour.half_width < 0.0 || contour.n_points < 0) throw InvalidArgument("hs_exact_propagator: contour parameters must be positive");

  const double abs_t = std::abs(p.T);
  const double a = abs_t / (2.0 * p.U * p.h);  // Gaussian rate
  const double eta = std::min(1.0 / abs_t, std::sqrt(p.U * p.h / abs_t));
  const double bound = std::abs(p.coupling()) * std::exp(abs_t * eta) / p.h;  // max of Re(c e^{i w T})/h on the contour
  const double budget = kDecayLog + 2.0 * bound;

  double right = std::sqrt(budget / (a * std::sin(2.0 * std::abs(alpha))));
  double left = budget / (2.0 * a * eta);
  if (contour.half_width > 0.0) right = left = contour.half_width;

  const auto rule = gauss_legendre(16);
  const Complex ray = std::polar(1.0, alpha);
  const Complex foot{0.0, -sigma * eta};

  // Endpoint decay check; grow arms until the ends are negligible.
  for (int grow = 0; grow < 20 && contour.half_width == 0.0; ++grow) {
    const double peak = std::max({std::abs(hs_integrand(p, 0.0)), std::abs(hs_integrand(p, foot)), 1e-300});
    const bool r_ok = std::abs(hs_integrand(p, right * ray)) < 1e-16 * peak;
    const bool l_ok = std::abs(hs_integrand(p, foot - left)) < 1e-16 * peak;
    if (r_ok && l_ok) break;
    if (!r_ok) right *= 1.5;
    if (!l_ok) left *= 1.5;
  }

  auto panels_for = [](double phase_span) { return 4 + static_cast<int>(std::ceil(phase_span / kPi)); };
  std::vector<Segment> segments = {
      {foot - left, foot, panels_for(a * left * left + 2.0 * a * eta * left + bound + abs_t * left)},
      {foot, Complex{0.0, 0.0}, panels_for(a * eta * eta + bound + abs_t * eta)},
      {Complex{0.0, 0.0}, right * ray,
       panels_for(a * right * right * std::abs(std::cos(2.0 * alpha)) + abs_t * right * (1.0 + bound))},
  };
  if (contour.n_points > 0) {
    const int base = std::max(1, contour.n_points / 16);
    int total = 0;
    for (const auto& s : segments) total += s.panels;
    for (auto& s : segments) s.panels = std::max(1, s.panels * base / std::max(total, 1));
  }

  const Complex pref = hs_prefactor(p);
  SegmentSum coarse = integrate_segments(p, segments, 1, rule);
  double last_diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 6; ++level) {
    const int refine = 1 << level;
    SegmentSum fine = integrate_segments(p, segments, refine, rule);
    const double diff = std::abs(fine.value - coarse.value);
    const double floor = 50.0 * kEps * fine.abs_sum;
    if (diff <= std::max(floor, 1e-14 * std::abs(fine.value))) {
      int points = 0;
      for (const auto& s : segments) points += s.panels * refine * static_cast<int>(rule.size());
      return {pref * fine.value, std::abs(pref) * (diff + floor), alpha, points};
    }
    if (level >= 3 && diff >= last_diff)
      throw NumericalError("hs_exact_propagator: refinement error stopped decreasing (" + std::to_string(diff) + ")");
    last_diff = diff;
    coarse = fine;
  }
  throw NumericalError("hs_exact_propagator: no convergence after 6 refinements");
}

Complex lambert_w(Complex x, int branch) {
  if (x == Complex{0.0, 0.0}) {
    if (branch == 0) return 0.0;
    throw InvalidArgument("lambert_w: only the principal branch is finite at 0");
  }
  Complex w;
  if (branch == 0 && std::abs(x) < 0.5) {
    w = x * (1.0 - x);
  } else if (branch == 0) {
    w = std::log(1.0 + x);
  } else {
    const Complex l1 = std::log(x) + 2.0 * kPi * branch * kI;
    const Complex l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const Complex ew = std::exp(w);
    const Complex f = w * ew - x;
    const Complex denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const Complex step = f / denom;
    w -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

namespace {

bool newton_polish(const PropagatorParams& p, Complex& omega, const SaddleSearch& search) {
  for (int iter = 0; iter < search.max_iter; ++iter) {
    const Complex f = consistency(p, omega);
    const Complex df = consistency_derivative(p, omega);
    if (!std::isfinite(std::abs(f)) || std::abs(df) == 0.0) return false;
    const Complex step = f / df;
    omega -= step;
    if (!std::isfinite(std::abs(omega))) return false;
    if (std::abs(step) <= search.tol * std::max(1.0, std::abs(omega))) break;
  }
  const double residual = std::abs(consistency(p, omega));
  return residual < 1e-10 * std::max(1.0, std::abs(omega));
}

SaddleSolution make_solution(const PropagatorParams& p, Complex omega, int branch) {
  SaddleSolution s;
  s.omega = omega;
  s.phi_value = phi_omega(p, omega);
  s.phi_second = phi_omega_second(p, omega);
  s.delta = 0.5 * (p.mu + 2.0 * omega) * p.T;
  s.branch_id = branch;
  s.newton_residual = std::abs(consistency(p, omega));
  s.degenerate = std::abs(consistency_derivative(p, omega)) < 1e-8;
  return s;
}

}  // namespace

std::vector<SaddleSolution> solve_saddles(const PropagatorParams& p, const SaddleSearch& search,
                                          SaddleDiagnostics* diagnostics) {
  require_params(p);
  if (search.tol < 1e-14 * (1.0 - 1e-12)) throw InvalidArgument("solve_saddles: tol must be >= 1e-14");
  if (search.n_starts < 8) throw InvalidArgument("solve_saddles: n_starts must be >= 8");
  if (search.branch_min > search.branch_max) throw InvalidArgument("solve_saddles: empty branch range");

  SaddleDiagnostics diag;
  std::vector<SaddleSolution> found;
  auto add = [&](Complex omega, int branch) {
    for (const auto& s : found)
      if (std::abs(s.omega - omega) < 1e-8) return;
    found.push_back(make_solution(p, omega, branch));
  };

  // omega e^{-i omega T} = -U c e^{i mu T}  <=>  v e^v = x with v = -i omega T
  const Complex c = p.coupling();
  const Complex x = kI * p.U * p.T * c * std::exp(kI * p.mu * p.T);
  const bool free = std::abs(c) == 0.0;

  std::vector<std::pair<int, Complex>> branch_roots;
  for (int k = search.branch_min; k <= search.branch_max; ++k) {
    if (free && k != 0) continue;
    Complex omega = (kI / p.T) * lambert_w(x, k);
    ++diag.lambert_seeds;
    if (newton_polish(p, omega, search)) {
      branch_roots.emplace_back(k, omega);
      add(omega, k);
    } else {
      ++diag.diverged_starts;
    }
  }

  // Blind multistart on a square grid; identify branches afterwards.
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(search.n_starts))));
  const double span = std::max(search.branch_max, -search.branch_min) + 1;
  const double radius = search.box_radius > 0.0 ? search.box_radius : 2.0 * kPi * span / std::abs(p.T);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double re = -radius + 2.0 * radius * (i + 0.5) / side;
      const double im = -radius + 2.0 * radius * (j + 0.5) / side;
      Complex omega{re, im};
      if (!newton_polish(p, omega, search)) {
        ++diag.diverged_starts;
        continue;
      }
      int branch = kUnknownBranch;
      for (const auto& [k, root] : branch_roots)
        if (std::abs(root - omega) < 1e-8) branch = k;
      if (branch == kUnknownBranch && !free) {
        const Complex v = -kI * omega * p.T;
        for (int k = -64; k <= 64 && branch == kUnknownBranch; ++k) {
          if (std::abs(lambert_w(x, k) - v) < 1e-6 * std::max(1.0, std::abs(v))) branch = k;
        }
      }
      if (free) branch = 0;
      add(omega, branch);
    }
  }

  if (diagnostics) *diagnostics = diag;
  if (found.empty()) throw NumericalError("solve_saddles: no solution of the consistency equation found");
  std::sort(found.begin(), found.end(),
            [](const SaddleSolution& a, const SaddleSolution& b) { return a.phi_value.real() > b.phi_value.real(); });
  return found;
}

const SaddleSolution& principal_saddle(std::span<const SaddleSolution> saddles) {
  for (const auto& s : saddles)
    if (s.branch_id == 0) return s;
  throw NumericalError("principal_saddle: branch 0 not among the solutions");
}

Complex semiclassical_propagator(std::span<const SaddleSolution> saddles, const PropagatorParams& p,
                                 const SemiclassicalOptions& options) {
  require_params(p);
  if (saddles.empty()) throw InvalidArgument("semiclassical_propagator: no saddles given");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : saddles) best = std::max(best, s.phi_value.real() / p.h);

  Complex total{0.0, 0.0};
  for (const auto& s : saddles) {
    if (s.phi_value.real() / p.h < best - options.window) continue;
    if (s.degenerate || std::abs(s.phi_second) == 0.0)
      throw DegenerateSaddleError("semiclassical_propagator: degenerate saddle at omega = " +
                                  std::to_string(s.omega.real()) + " + " + std::to_string(s.omega.imag()) + "i");
    // (iT/(hU))^{1/2} (Phi''/h)^{-1/2} combined into one principal root
    const Complex fluct = std::sqrt(kI * p.T / (p.U * s.phi_second));
    Complex exponent = s.phi_value / p.h + 0.5 * kI * (s.omega + p.mu) * p.T;
    if (options.anomaly_phase) exponent -= kI * s.delta;
    total += fluct * std::exp(exponent);
  }
  return total;
}

ActionDecomposition decompose_action(const PropagatorParams& p, Complex omega, int n_time) {
  require_params(p);
  const Complex rate = kI * (omega + p.mu);
  auto z = [&](double t) { return p.z_i * std::exp(rate * t); };
  auto zbar = [&](double t) { return std::conj(p.z_f) * std::exp(rate * (p.T - t)); };

  ActionDecomposition out;
  out.gamma = 0.5 * (std::conj(p.z_f) * z(p.T) + zbar(0.0) * p.z_i - std::norm(p.z_f) - std::norm(p.z_i));

  const auto rule = gauss_legendre(n_time, 0.0, p.T);
  Complex kinetic{0.0, 0.0}, energy{0.0, 0.0};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double t = rule.nodes[q];
    const Complex zt = z(t), zb = zbar(t);
    const Complex dz = rate * zt, dzb = -rate * zb;
    kinetic += rule.weights[q] * 0.5 * (zt * dzb - zb * dz);
    energy += rule.weights[q] * (-(p.mu + omega) * zb * zt - omega * omega / (2.0 * p.U));
  }
  out.s_bulk = kinetic - kI * energy;
  return out;
}

Complex exact_bose_propagator(const PropagatorParams& p, bool weyl) {
  require_params(p);
  const Complex widest = std::abs(p.z_i) > std::abs(p.z_f) ? p.z_i : p.z_f;
  const auto fock = build_fock(std::max(8, default_cutoff(widest, p.h)), p.h);
  const auto psi_i = glauber_state(fock, p.z_i);
  const auto psi_f = glauber_state(fock, p.z_f);
  const auto hamiltonian = bose_hubbard_hamiltonian(fock, p.mu, p.U, weyl ? Ordering::weyl : Ordering::normal);
  return propagator(hamiltonian, p.T, p.h, psi_i.amplitudes, psi_f.amplitudes);
}

std::vector<OrderingRow> ordering_comparison(const PropagatorParams& p, std::span<const double> h_sweep) {
  if (h_sweep.empty()) throw InvalidArgument("ordering_comparison: empty h sweep");
  for (std::size_t i = 0; i < h_sweep.size(); ++i) {
    if (!(h_sweep[i] > 0.0)) throw InvalidArgument("ordering_comparison: h values must be positive");
    if (i > 0 && !(h_sweep[i] < h_sweep[i - 1])) throw InvalidArgument("ordering_comparison: h values must decrease");
  }

  std::vector<OrderingRow> rows;
  for (const double h : h_sweep) {
    PropagatorParams q = p;
    q.h = h;
    const auto saddles = solve_saddles(q);
    const SaddleSolution principal = principal_saddle(saddles);
    const std::span<const SaddleSolution> relevant(&principal, 1);

    OrderingRow row;
    row.h = h;
    row.k_sc = semiclassical_propagator(relevant, q);
    row.k_sc_no_anomaly = semiclassical_propagator(relevant, q, {.anomaly_phase = false});
    row.k_weyl = exact_bose_propagator(q, true);
    row.k_normal = exact_bose_propagator(q, false);
    row.rel_err_weyl = std::abs(row.k_sc - row.k_weyl) / std::abs(row.k_weyl);
    row.rel_err_normal = std::abs(row.k_sc - row.k_normal) / std::abs(row.k_normal);
    row.rel_err_weyl_no_anomaly = std::abs(row.k_sc_no_anomaly - row.k_weyl) / std::abs(row.k_weyl);
    row.rel_err_normal_no_anomaly = std::abs(row.k_sc_no_anomaly - row.k_normal) / std::abs(row.k_normal);
    rows.push_back(row);
  }
  return rows;
}

OffsetFit fit_constant_offset(std::span<const Complex> numerator, std::span<const Complex> denominator) {
  if (numerator.size() != denominator.size() || numerator.empty())
    throw InvalidArgument("fit_constant_offset: need matching, nonempty sequences");
  std::vector<Complex> ratios(numerator.size());
  Complex mean{0.0, 0.0};
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    ratios[i] = numerator[i] / denominator[i];
    mean += ratios[i];
  }
  mean /= static_cast<double>(ratios.size());
  double spread = 0.0;
  for (const auto& r : ratios) spread = std::max(spread, std::abs(r - mean));
  return {mean, spread};
}

}  // namespace cspi
