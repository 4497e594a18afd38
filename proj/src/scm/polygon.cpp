#include "scmt/scm/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scmt/error.hpp"

namespace scmt::scm {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

int orientation(Complex a, Complex b, Complex c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(Complex a, Complex b, Complex p, double eps) {
  return distance_to_segment(p, a, b) <= eps;
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d, double eps) {
  const int o1 = orientation(a, b, c, eps);
  const int o2 = orientation(a, b, d, eps);
  const int o3 = orientation(c, d, a, eps);
  const int o4 = orientation(c, d, b, eps);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(a, b, c, eps) || on_segment(a, b, d, eps) || on_segment(c, d, a, eps) ||
         on_segment(c, d, b, eps);
}

}  // namespace

double Polygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, std::abs(vertices[i] - vertices[j]));
  return d;
}

double signed_area2(std::span<const Complex> v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return a;
}

double polygon_area(std::span<const Complex> v) { return 0.5 * std::abs(signed_area2(v)); }

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool is_simple(std::span<const Complex> v) {
  const std::size_t n = v.size();
  double scale = 0.0;
  for (auto z : v) scale = std::max(scale, std::abs(z));
  const double eps = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n], eps)) return false;
    }
  }
  return true;
}

double distance_to_boundary(std::span<const Complex> v, Complex p) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    d = std::min(d, distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
  return d;
}

bool contains(std::span<const Complex> v, Complex p, double boundary_tol) {
  if (boundary_tol > 0.0 && distance_to_boundary(v, p) <= boundary_tol) return true;
  int winding = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i];
    const Complex b = v[(i + 1) % v.size()];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross(b - a, p - a) > 0) ++winding;
    } else {
      if (b.imag() <= p.imag() && cross(b - a, p - a) < 0) --winding;
    }
  }
  return winding != 0;
}

Polygon validate_polygon(std::span<const Complex> vertices,
                         const std::array<std::size_t, 4>& corners) {
  const std::size_t n = vertices.size();
  if (n < 4) throw Error(Errc::DegenerateVertex, "polygon needs at least 4 vertices");
  for (auto z : vertices)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(Errc::DegenerateVertex, "non-finite vertex");

  Polygon poly;
  poly.vertices.assign(vertices.begin(), vertices.end());
  const double diam = poly.diameter();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(vertices[(i + 1) % n] - vertices[i]) <= 1e-12 * diam)
      throw Error(Errc::DegenerateVertex, "repeated vertex " + std::to_string(i));
  }
  if (!is_simple(vertices)) throw Error(Errc::NotSimple, "edges intersect");
  if (signed_area2(vertices) <= 0.0) throw Error(Errc::ClockwiseOrder, "vertices are clockwise");

  poly.alphas.resize(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex in = vertices[j] - vertices[(j + n - 1) % n];
    const Complex out = vertices[(j + 1) % n] - vertices[j];
    const double turn = std::arg(out / in);
    const double alpha = 1.0 - turn / kPi;
    if (!(alpha > 1e-12 && alpha < 2.0 - 1e-12))
      throw Error(Errc::DegenerateVertex, "vertex " + std::to_string(j) + " folds back");
    poly.alphas[j] = alpha;
    sum += alpha;
  }
  if (std::abs(sum - static_cast<double>(n - 2)) > 1e-9)
    throw Error(Errc::DegenerateVertex, "angle sum mismatch");

  for (auto c : corners)
    if (c >= n) throw Error(Errc::InvalidCorners, "corner index out of range");
  for (int k = 1; k < 4; ++k) {
    const std::size_t prev = (corners[k - 1] + n - corners[0]) % n;
    const std::size_t cur = (corners[k] + n - corners[0]) % n;
    if (cur <= prev) throw Error(Errc::InvalidCorners, "corner indices must increase cyclically");
  }
  poly.corners = corners;
  return poly;
}

}  // namespace scmt::scm
