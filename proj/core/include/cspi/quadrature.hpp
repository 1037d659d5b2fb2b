#pragma once

#include <vector>

namespace cspi {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n equally spaced nodes on [0, 2pi) with weight 2pi/n; exact for
/// trigonometric polynomials of degree < n.
QuadratureRule uniform_periodic(int n);

}  // namespace cspi
