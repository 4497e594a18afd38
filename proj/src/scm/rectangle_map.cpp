#include "scmt/scm/rectangle_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scmt/error.hpp"
#include "scmt/scm/elliptic.hpp"

namespace scmt::scm {

namespace {

// Beyond this distance past the outermost prevertex the integrand is below
// exp(-12 pi) relative and the strip ends are treated as reached.
constexpr double kFarMargin = 12.0;
constexpr double kTableMargin = 4.0;
constexpr double kTableStep = 0.2;

}  // namespace

RectangleMap RectangleMap::build(Polygon polygon, SolveReport* report) {
  RectangleMap map;
  map.strip_ = solve_parameter_problem(polygon, report);
  map.polygon_ = std::move(polygon);
  map.integ_ = make_integrator(map.strip_, map.polygon_);
  map.diameter_ = map.polygon_.diameter();

  const double L = map.strip_.L;
  map.m_ = modulus_from_strip_length(L);
  map.K_ = ellip_k(map.m_);
  map.Kp_ = ellip_kp(map.m_);
  map.aspect_ = map.Kp_ / (2.0 * map.K_);

  map.rect_integ_ = StripIntegrator({{0.0, false}, {L, false}, {L, true}, {0.0, true}}, {-0.5, -0.5, -0.5, -0.5});
  map.rect_A_ = Complex{0.0, map.Kp_} / map.rect_integ_.integrate({0.0, 0.0}, {L, 0.0});

  double lo = 0.0;
  double hi = L;
  for (const auto& p : map.strip_.prevertices) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  map.x_lo_ = lo - kFarMargin;
  map.x_hi_ = hi + kFarMargin;

  for (double y : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    Complex z{lo - kTableMargin, y};
    Complex w = map.strip_to_polygon(z);
    map.anchors_.push_back({z, w});
    while (z.real() < hi + kTableMargin) {
      const Complex next = z + kTableStep;
      w += map.strip_.A * map.integ_.integrate(z, next);
      z = next;
      map.anchors_.push_back({z, w});
    }
  }
  return map;
}

Complex RectangleMap::rect_corner(int k) const {
  switch (k) {
    case 0: return {K_, 0.0};
    case 1: return {K_, Kp_};
    case 2: return {-K_, Kp_};
    default: return {-K_, 0.0};
  }
}

bool RectangleMap::in_rectangle(Complex q, double tol) const {
  const double scale = tol * std::max(K_, Kp_);
  return std::isfinite(q.real()) && std::isfinite(q.imag()) && q.real() >= -K_ - scale &&
         q.real() <= K_ + scale && q.imag() >= -scale && q.imag() <= Kp_ + scale;
}

Complex RectangleMap::clamp_far(Complex z) const {
  return {std::clamp(z.real(), x_lo_, x_hi_), std::clamp(z.imag(), 0.0, 1.0)};
}

Complex RectangleMap::rect_to_strip(Complex q) const {
  if (!in_rectangle(q)) throw Error(Errc::OutsideRectangle, "point outside the rectangle");
  q = {std::clamp(q.real(), -K_, K_), std::clamp(q.imag(), 0.0, Kp_)};
  Complex sn = jacobi_sn(q, m_);
  if (!std::isfinite(sn.real()) || !std::isfinite(sn.imag())) return {x_hi_, 0.5};
  if (sn == Complex{}) return {x_lo_, 0.5};
  if (!(sn.imag() > 0.0)) sn.imag(0.0);
  return clamp_far(std::log(sn) / kPi);
}

Complex RectangleMap::strip_to_rect(Complex z) const {
  if (!in_strip(z, 1e-12)) throw Error(Errc::OutsideStrip, "point outside 0 <= Im z <= 1");
  z = clamp_far(z);
  return Complex{K_, 0.0} + rect_A_ * rect_integ_.integrate({0.0, 0.0}, z);
}

Complex RectangleMap::strip_to_polygon(Complex z) const {
  if (!in_strip(z, 1e-12)) throw Error(Errc::OutsideStrip, "point outside 0 <= Im z <= 1");
  return scm::strip_to_polygon(clamp_far(z), strip_, integ_);
}

RectangleMap::NewtonResult RectangleMap::newton(Complex target, Complex z, Complex wz, double tol,
                                                int max_iter) const {
  double res = std::abs(wz - target);
  for (int it = 0; it < max_iter; ++it) {
    if (res <= tol) return {true, z, wz};
    const Complex deriv = strip_.A * integ_.integrand(z);
    if (!std::isfinite(deriv.real()) || !std::isfinite(deriv.imag()) || deriv == Complex{}) break;
    const Complex step = (target - wz) / deriv;
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const Complex zt = clamp_far(z + lambda * step);
      if (zt == z) break;
      Complex wt;
      try {
        wt = wz + strip_.A * integ_.integrate(z, zt);
      } catch (const Error&) {
        continue;
      }
      const double rt = std::abs(wt - target);
      if (rt < res) {
        z = zt;
        wz = wt;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {res <= tol, z, wz};
}

RectangleMap::NewtonResult RectangleMap::homotopy(Complex target, const Anchor& start) const {
  const double tol = 1e-10 * diameter_;
  Complex z = start.z;
  Complex wz = start.w;
  double t = 0.0;
  double dt = 0.25;
  while (t < 1.0) {
    const double t1 = std::min(1.0, t + dt);
    const Complex goal = start.w + t1 * (target - start.w);
    const NewtonResult r = newton(goal, z, wz, tol, 20);
    if (r.ok) {
      z = r.z;
      wz = r.w;
      t = t1;
      dt = std::min(2.0 * dt, 0.5);
    } else {
      dt *= 0.5;
      if (dt < 1e-6) return {false, z, wz};
    }
  }
  return newton(target, z, wz, 1e-12 * diameter_, 50);
}

Complex RectangleMap::polygon_to_strip(Complex w) const {
  const auto& verts = polygon_.vertices;
  if (!contains(verts, w, 1e-9 * diameter_)) throw Error(Errc::OutsidePolygon, "point outside the polygon");
  for (std::size_t k = 0; k < verts.size(); ++k)
    if (std::abs(w - verts[k]) <= 1e-12 * diameter_) return strip_.prevertices[k].point();

  std::vector<std::size_t> order(anchors_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 4, order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(anchors_[a].w - w) < std::abs(anchors_[b].w - w);
  });

  const double tol = 1e-12 * diameter_;
  const Anchor& nearest = anchors_[order[0]];
  NewtonResult r = newton(w, nearest.z, nearest.w, tol, 50);
  for (std::size_t i = 0; !r.ok && i < 4; ++i) r = homotopy(w, anchors_[order[i]]);
  if (!r.ok) throw Error(Errc::InverseNoConvergence, "strip inverse did not converge");
  return r.z;
}

Complex RectangleMap::polygon_to_rect(Complex w) const {
  for (int k = 0; k < 4; ++k)
    if (std::abs(w - polygon_.vertices[polygon_.corners[k]]) <= 1e-12 * diameter_) return rect_corner(k);
  return strip_to_rect(polygon_to_strip(w));
}

Complex RectangleMap::rect_to_polygon(Complex q) const { return strip_to_polygon(rect_to_strip(q)); }

Complex rect_to_strip(Complex q, const RectangleMap& map) { return map.rect_to_strip(q); }
Complex polygon_to_rect(Complex w, const RectangleMap& map) { return map.polygon_to_rect(w); }
Complex rect_to_polygon(Complex q, const RectangleMap& map) { return map.rect_to_polygon(q); }

}  // namespace scmt::scm
