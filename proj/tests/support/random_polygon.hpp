#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "scmt/scm/polygon.hpp"

namespace scmt::testing {

/// Star-shaped counterclockwise polygon around the origin with well spread
/// vertices; corners are the first four.
inline scm::Polygon random_star_polygon(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::uniform_real_distribution<double> radius(0.6, 1.4);
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (;;) {
    std::vector<Complex> v;
    const double s = scale(rng);
    const Complex c{shift(rng), shift(rng)};
    for (std::size_t k = 0; k < n; ++k) {
      const double a = 2.0 * kPi * (static_cast<double>(k) + 0.5 + jitter(rng)) / static_cast<double>(n);
      v.push_back(c + s * radius(rng) * Complex{std::cos(a), std::sin(a)});
    }
    try {
      auto p = scm::validate_polygon(v, {0, 1, 2, 3});
      if (*std::min_element(p.alphas.begin(), p.alphas.end()) > 0.15) return p;
    } catch (const std::exception&) {
    }
  }
}

/// Uniform sample from the polygon interior by rejection, kept at least
/// `margin` * diameter away from the boundary.
inline Complex random_interior_point(std::mt19937_64& rng, const scm::Polygon& p, double margin = 1e-3) {
  double lo_x = p.vertices[0].real(), hi_x = lo_x, lo_y = p.vertices[0].imag(), hi_y = lo_y;
  for (auto z : p.vertices) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  }
  std::uniform_real_distribution<double> ux(lo_x, hi_x), uy(lo_y, hi_y);
  for (;;) {
    const Complex w{ux(rng), uy(rng)};
    if (scm::contains(p.vertices, w) && scm::distance_to_boundary(p.vertices, w) > margin * p.diameter()) return w;
  }
}

}  // namespace scmt::testing
