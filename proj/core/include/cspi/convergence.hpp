#pragma once

#include <span>

namespace cspi {

struct LimitEstimate {
  double value = 0.0;
  /// |R(N, 2N) - R(N/2, N)| when three levels are available, else |Z_2N - Z_N|.
  double error = 0.0;
};

/// Two-point Richardson extrapolation assuming a leading 1/N error: 2 Z_{2N} - Z_N.
double richardson_1_over_n(double z_n, double z_2n);

/// Limit from a doubling sequence Z_N, Z_2N, Z_4N, ... (at least two entries).
LimitEstimate richardson_limit(std::span<const double> doubling_sequence);

/// Least-squares slope of log|y| against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace cspi
