#include <doctest.h>

#include <cmath>
#include <numeric>

#include "scmt/scm/quadrature.hpp"

using scmt::scm::gauss_jacobi;
using scmt::scm::gauss_legendre;

namespace {

double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

}  // namespace

TEST_CASE("legendre nodes are symmetric and weights sum to 2") {
  const auto r = gauss_legendre(8);
  REQUIRE(r.nodes.size() == 8);
  CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (std::size_t i = 0; i < 8; ++i) CHECK(r.nodes[i] == doctest::Approx(-r.nodes[7 - i]).epsilon(1e-14));
}

TEST_CASE("jacobi rule is exact for polynomials up to degree 2n - 1") {
  // Integral of (1-x)^(a+j) (1+x)^(b+l) over [-1, 1] = 2^(a+b+j+l+1) B(a+j+1, b+l+1).
  for (double a : {-0.5, -0.25, 0.0, 0.7})
    for (double b : {-0.75, 0.0, 0.5}) {
      const int n = 8;
      const auto r = gauss_jacobi(n, a, b);
      for (int j = 0; j <= 7; ++j)
        for (int l = 0; j + l <= 2 * n - 1; ++l) {
          double q = 0.0;
          for (int k = 0; k < n; ++k) q += r.weights[k] * std::pow(1.0 - r.nodes[k], j) * std::pow(1.0 + r.nodes[k], l);
          const double exact = std::pow(2.0, a + b + j + l + 1) * beta(a + j + 1, b + l + 1);
          CHECK(q == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("nodes lie strictly inside the interval in increasing order") {
  const auto r = gauss_jacobi(12, -0.9, 0.4);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    CHECK(std::abs(r.nodes[i]) < 1.0);
    CHECK(r.weights[i] > 0.0);
    if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
  }
}
