#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace scmt {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Planar pose in metres / radians.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

/// Normalized vehicle command: v in [0, 1], gamma in [-1, 1].
struct Command {
  double v = 0.0;
  double gamma = 0.0;

  Complex as_complex() const { return {v, gamma}; }
  static Command from_complex(Complex c) { return {c.real(), c.imag()}; }

  friend bool operator==(const Command&, const Command&) = default;
};

}  // namespace scmt
