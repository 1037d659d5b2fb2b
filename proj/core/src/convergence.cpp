#include "cspi/convergence.hpp"

#include <cmath>

#include "cspi/errors.hpp"

namespace cspi {

double richardson_1_over_n(double z_n, double z_2n) { return 2.0 * z_2n - z_n; }

LimitEstimate richardson_limit(std::span<const double> seq) {
  if (seq.size() < 2) throw InvalidArgument("richardson_limit: need at least two levels");
  const std::size_t n = seq.size();
  const double finest = richardson_1_over_n(seq[n - 2], seq[n - 1]);
  if (n == 2) return {finest, std::abs(seq[1] - seq[0])};
  const double coarser = richardson_1_over_n(seq[n - 3], seq[n - 2]);
  return {finest, std::abs(finest - coarser)};
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("log_log_slope: need >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cspi
