#pragma once

#include <vector>

namespace scmt::scm {

/// Nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule for the weight (1 - x)^a (1 + x)^b, a, b > -1,
/// computed by the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double a, double b);

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace scmt::scm
