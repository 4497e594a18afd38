#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "scmt/types.hpp"

namespace scmt::scm {

/// A generalized quadrilateral: a simple counterclockwise polygon with four
/// vertices marked as the images of rectangle corners.
struct Polygon {
  std::vector<Complex> vertices;
  /// Interior angle at each vertex divided by pi.
  std::vector<double> alphas;
  std::array<std::size_t, 4> corners{};

  std::size_t size() const { return vertices.size(); }
  double diameter() const;
};

/// Checks the vertex list, computes the interior angles and returns the
/// polygon. Throws Error{NotSimple | ClockwiseOrder | DegenerateVertex |
/// InvalidCorners}.
Polygon validate_polygon(std::span<const Complex> vertices,
                         const std::array<std::size_t, 4>& corners);

/// Twice the signed area (positive for counterclockwise order).
double signed_area2(std::span<const Complex> vertices);

double polygon_area(std::span<const Complex> vertices);

bool is_simple(std::span<const Complex> vertices);

/// Winding-number containment. Points within `boundary_tol` of an edge count
/// as inside.
bool contains(std::span<const Complex> vertices, Complex p, double boundary_tol = 0.0);

double distance_to_boundary(std::span<const Complex> vertices, Complex p);

double distance_to_segment(Complex p, Complex a, Complex b);

}  // namespace scmt::scm
