#pragma once

#include <vector>

#include "scmt/scm/polygon.hpp"
#include "scmt/scm/strip_map.hpp"
#include "scmt/types.hpp"

namespace scmt::scm {

/// Conformal map between a generalized quadrilateral and the rectangle
/// [-K, K] x [0, K'] of modulus m, routed through the strip 0 <= Im z <= 1.
///
/// Corner k of the polygon lands on rectangle corner k:
///   0 -> K,  1 -> K + iK',  2 -> -K + iK',  3 -> -K.
/// Instances are immutable after build() and safe to share across threads.
class RectangleMap {
 public:
  /// Solves the parameter problem for `polygon`.
  static RectangleMap build(Polygon polygon, SolveReport* report = nullptr);

  const Polygon& polygon() const { return polygon_; }
  const StripMapParams& strip() const { return strip_; }
  const StripIntegrator& integrator() const { return integ_; }
  double modulus_m() const { return m_; }
  /// Rectangle height / width, K'(m) / (2 K(m)).
  double aspect() const { return aspect_; }
  double K() const { return K_; }
  double Kp() const { return Kp_; }
  Complex rect_corner(int k) const;

  bool in_rectangle(Complex q, double tol = 1e-12) const;

  /// z = ln(sn(q|m)) / pi. Throws Error{OutsideRectangle}.
  Complex rect_to_strip(Complex q) const;
  /// Inverse of rect_to_strip, evaluated as the strip -> rectangle
  /// Schwarz-Christoffel integral. Throws Error{OutsideStrip}.
  Complex strip_to_rect(Complex z) const;

  Complex strip_to_polygon(Complex z) const;
  /// Damped Newton from the nearest tabulated point, with a line-homotopy
  /// fallback. Throws Error{OutsidePolygon | InverseNoConvergence}.
  Complex polygon_to_strip(Complex w) const;

  Complex polygon_to_rect(Complex w) const;
  Complex rect_to_polygon(Complex q) const;

 private:
  struct Anchor {
    Complex z;
    Complex w;
  };
  struct NewtonResult {
    bool ok = false;
    Complex z;
    Complex w;
  };

  NewtonResult newton(Complex target, Complex z, Complex wz, double tol, int max_iter) const;
  NewtonResult homotopy(Complex target, const Anchor& start) const;
  Complex clamp_far(Complex z) const;

  Polygon polygon_;
  StripMapParams strip_;
  StripIntegrator integ_;
  StripIntegrator rect_integ_;
  Complex rect_A_;
  double m_ = 0.0;
  double aspect_ = 0.0;
  double K_ = 0.0;
  double Kp_ = 0.0;
  double diameter_ = 0.0;
  double x_lo_ = 0.0;
  double x_hi_ = 0.0;
  std::vector<Anchor> anchors_;
};

/// Free-function spellings of the RectangleMap operations.
Complex rect_to_strip(Complex q, const RectangleMap& map);
Complex polygon_to_rect(Complex w, const RectangleMap& map);
Complex rect_to_polygon(Complex q, const RectangleMap& map);

}  // namespace scmt::scm
