#include "scmt/scm/strip_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "scmt/error.hpp"
#include "scmt/scm/elliptic.hpp"

namespace scmt::scm {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kMaxDepth = 64;

double point_segment_distance(Complex p, Complex a, Complex b) { return distance_to_segment(p, a, b); }

}  // namespace

Complex strip_factor_base(Complex z, const Prevertex& pv) {
  const Complex d = z - pv.point();
  const double sign = pv.top ? -1.0 : 1.0;
  return -kI * std::sinh(sign * 0.5 * kPi * d);
}

Complex strip_factor(Complex z, std::size_t j, const StripMapParams& params, const Polygon& polygon) {
  if (j == 0) return std::exp(0.5 * (params.theta_plus - params.theta_minus) * z);
  const std::size_t v = j - 1;
  const Complex base = strip_factor_base(z, params.prevertices.at(v));
  const double beta = polygon.alphas.at(v) - 1.0;
  if (beta == 0.0) return {1.0, 0.0};
  if (base == Complex{}) return beta > 0.0 ? Complex{} : Complex{std::numeric_limits<double>::infinity(), 0.0};
  return std::exp(beta * std::log(base));
}

// ---------------------------------------------------------------------------
// StripIntegrator

StripIntegrator::StripIntegrator(std::vector<Prevertex> prevertices, std::vector<double> exponents, int nodes)
    : prevertices_(std::move(prevertices)), exponents_(std::move(exponents)), nodes_(nodes) {
  points_.reserve(prevertices_.size());
  for (const auto& pv : prevertices_) points_.push_back(pv.point());
  jacobi_rules_.reserve(exponents_.size());
  for (double beta : exponents_) jacobi_rules_.push_back(gauss_jacobi(nodes_, 0.0, beta));
  legendre_ = gauss_legendre(nodes_);
}

Complex StripIntegrator::scaled_integrand(Complex z, int skip) const {
  Complex log_sum{0.0, 0.0};
  for (std::size_t j = 0; j < prevertices_.size(); ++j) {
    const double beta = exponents_[j];
    if (beta == 0.0) continue;
    Complex lg = std::log(strip_factor_base(z, prevertices_[j]));
    if (static_cast<int>(j) == skip) lg -= std::log(std::abs(z - points_[j]));
    log_sum += beta * lg;
  }
  return std::exp(log_sum);
}

Complex StripIntegrator::integrand(Complex z) const { return scaled_integrand(z, -1); }

int StripIntegrator::prevertex_at(Complex z) const {
  for (std::size_t j = 0; j < points_.size(); ++j)
    if (std::abs(z - points_[j]) <= 1e-14 * (1.0 + std::abs(z))) return static_cast<int>(j);
  return -1;
}

double StripIntegrator::nearest_singularity(Complex a, Complex b, int skip) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (static_cast<int>(j) == skip || exponents_[j] == 0.0) continue;
    d = std::min(d, point_segment_distance(points_[j], a, b));
  }
  return d;
}

Complex StripIntegrator::integrate(Complex a, Complex b) const {
  if (a == b) return {0.0, 0.0};
  const int sa = prevertex_at(a);
  const int sb = prevertex_at(b);
  const double len = std::abs(b - a);
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (static_cast<int>(j) == sa || static_cast<int>(j) == sb) continue;
    if (point_segment_distance(points_[j], a, b) <= 1e-14 * (1.0 + len))
      throw Error(Errc::SingularInterior, "prevertex " + std::to_string(j) + " lies on the segment");
  }
  if (sa >= 0 && sb >= 0) {
    const Complex mid = 0.5 * (a + b);
    return integrate_singular(a, mid, sa) - integrate_singular(b, mid, sb);
  }
  if (sa >= 0) return integrate_singular(a, b, sa);
  if (sb >= 0) return -integrate_singular(b, a, sb);
  return integrate_regular(a, b, 0);
}

Complex StripIntegrator::integrate_singular(Complex a, Complex b, int sa) const {
  const double total = std::abs(b - a);
  const Complex dir = (b - a) / total;
  double h = total;
  for (int i = 0; i < kMaxDepth && nearest_singularity(a, a + h * dir, sa) < h; ++i) h *= 0.5;
  const Complex c = (h == total) ? b : a + h * dir;

  const double beta = exponents_[sa];
  const QuadratureRule& rule = jacobi_rules_[sa];
  const Complex half = 0.5 * (c - a);
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex z = a + half * (1.0 + rule.nodes[k]);
    sum += rule.weights[k] * scaled_integrand(z, sa);
  }
  Complex result = half * std::pow(0.5 * h, beta) * sum;
  if (c != b) result += integrate_regular(c, b, 0);
  return result;
}

Complex StripIntegrator::integrate_regular(Complex a, Complex b, int depth) const {
  const double len = std::abs(b - a);
  if (depth < kMaxDepth && nearest_singularity(a, b, -1) < len) {
    const Complex mid = 0.5 * (a + b);
    return integrate_regular(a, mid, depth + 1) + integrate_regular(mid, b, depth + 1);
  }
  const Complex half = 0.5 * (b - a);
  const Complex center = 0.5 * (a + b);
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < legendre_.nodes.size(); ++k)
    sum += legendre_.weights[k] * integrand(center + half * legendre_.nodes[k]);
  return half * sum;
}

StripIntegrator make_integrator(const StripMapParams& params, const Polygon& polygon, int nodes) {
  std::vector<double> beta(polygon.alphas.size());
  for (std::size_t j = 0; j < beta.size(); ++j) beta[j] = polygon.alphas[j] - 1.0;
  return StripIntegrator(params.prevertices, std::move(beta), nodes);
}

Complex integrate_strip(Complex a, Complex b, const StripMapParams& params, const Polygon& polygon) {
  return make_integrator(params, polygon).integrate(a, b);
}

bool in_strip(Complex z, double tol) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && z.imag() >= -tol && z.imag() <= 1.0 + tol;
}

Complex strip_to_polygon(Complex z, const StripMapParams& params, const StripIntegrator& integ) {
  if (!in_strip(z)) throw Error(Errc::OutsideStrip, "point outside 0 <= Im z <= 1");
  z.imag(std::clamp(z.imag(), 0.0, 1.0));
  return params.C + params.A * integ.integrate({0.0, 0.0}, z);
}

double side_residual(const StripMapParams& params, const Polygon& polygon, const StripIntegrator& integ) {
  const std::size_t n = polygon.size();
  const double diam = polygon.diameter();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k1 = (k + 1) % n;
    const Complex side = params.A * integ.integrate(params.prevertices[k].point(), params.prevertices[k1].point());
    worst = std::max(worst, std::abs(side - (polygon.vertices[k1] - polygon.vertices[k])) / diam);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Parameter problem

namespace {

/// Prevertex layout relative to the corner sequence. Sequence position s
/// holds polygon vertex (corner0 + s) mod N.
///   side A (corner0 -> corner1): bottom, 0 < x < L
///   side B (corner1 -> corner2): bottom x > L, then top x > L (past +inf)
///   side C (corner2 -> corner3): top, L > x > 0
///   side D (corner3 -> corner0): top x < 0, then bottom x < 0 (past -inf)
struct Layout {
  std::size_t n = 0;
  std::array<std::size_t, 4> corner_pos{};
  std::size_t b_bottom = 0;
  std::size_t d_top = 0;

  std::size_t side_a() const { return corner_pos[1] - 1; }
  std::size_t side_b() const { return corner_pos[2] - corner_pos[1] - 1; }
  std::size_t side_c() const { return corner_pos[3] - corner_pos[2] - 1; }
  std::size_t side_d() const { return n - corner_pos[3] - 1; }
  std::size_t unknowns() const { return n - 3; }

  /// Unconstrained variables -> strip positions in sequence order.
  std::vector<Prevertex> decode(const Eigen::VectorXd& y) const {
    std::vector<Prevertex> out(n);
    std::size_t at = 0;
    const double L = std::exp(y(at++));

    auto fractions = [&](std::size_t count) {
      // count points split (0, 1) into count + 1 gaps; the last logit is fixed at 0.
      std::vector<double> w(count + 1, 1.0);
      for (std::size_t i = 0; i < count; ++i) w[i] = std::exp(y(at++));
      double total = 0.0;
      for (double v : w) total += v;
      std::vector<double> cum(count);
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        acc += w[i];
        cum[i] = acc / total;
      }
      return cum;
    };

    out[0] = {0.0, false};
    out[corner_pos[1]] = {L, false};
    out[corner_pos[2]] = {L, true};
    out[corner_pos[3]] = {0.0, true};

    const auto fa = fractions(side_a());
    for (std::size_t i = 0; i < side_a(); ++i) out[1 + i] = {L * fa[i], false};

    const std::size_t b_top = side_b() - b_bottom;
    double x = L;
    for (std::size_t i = 0; i < b_bottom; ++i) {
      x += std::exp(y(at++));
      out[corner_pos[1] + 1 + i] = {x, false};
    }
    x = L;
    for (std::size_t i = 0; i < b_top; ++i) {
      x += std::exp(y(at++));
      out[corner_pos[2] - 1 - i] = {x, true};
    }

    const auto fc = fractions(side_c());
    for (std::size_t i = 0; i < side_c(); ++i) out[corner_pos[2] + 1 + i] = {L * (1.0 - fc[i]), true};

    const std::size_t d_bottom = side_d() - d_top;
    x = 0.0;
    for (std::size_t i = 0; i < d_top; ++i) {
      x -= std::exp(y(at++));
      out[corner_pos[3] + 1 + i] = {x, true};
    }
    x = 0.0;
    for (std::size_t i = 0; i < d_bottom; ++i) {
      x -= std::exp(y(at++));
      out[n - 1 - i] = {x, false};
    }
    return out;
  }

  Eigen::VectorXd encode(const std::vector<Prevertex>& pv) const {
    Eigen::VectorXd y(unknowns());
    std::size_t at = 0;
    const double L = pv[corner_pos[1]].x;
    y(at++) = std::log(L);

    auto logits = [&](std::size_t first, std::size_t count, bool descending) {
      std::vector<double> gaps(count + 1);
      double prev = descending ? L : 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const double xi = pv[first + i].x;
        gaps[i] = descending ? prev - xi : xi - prev;
        prev = xi;
      }
      gaps[count] = descending ? prev : L - prev;
      for (std::size_t i = 0; i < count; ++i) y(at++) = std::log(gaps[i] / gaps[count]);
    };

    logits(1, side_a(), false);
    const std::size_t b_top = side_b() - b_bottom;
    double x = L;
    for (std::size_t i = 0; i < b_bottom; ++i) {
      const double xi = pv[corner_pos[1] + 1 + i].x;
      y(at++) = std::log(xi - x);
      x = xi;
    }
    x = L;
    for (std::size_t i = 0; i < b_top; ++i) {
      const double xi = pv[corner_pos[2] - 1 - i].x;
      y(at++) = std::log(xi - x);
      x = xi;
    }
    logits(corner_pos[2] + 1, side_c(), true);
    const std::size_t d_bottom = side_d() - d_top;
    x = 0.0;
    for (std::size_t i = 0; i < d_top; ++i) {
      const double xi = pv[corner_pos[3] + 1 + i].x;
      y(at++) = std::log(x - xi);
      x = xi;
    }
    x = 0.0;
    for (std::size_t i = 0; i < d_bottom; ++i) {
      const double xi = pv[n - 1 - i].x;
      y(at++) = std::log(x - xi);
      x = xi;
    }
    return y;
  }
};

/// Initial prevertices: place every vertex on the rectangle boundary in
/// proportion to arc length along its side, then push through ln(sn(q|m))/pi.
std::vector<Prevertex> initial_guess(const std::vector<Complex>& seq, Layout& layout) {
  const std::size_t n = seq.size();
  std::vector<double> arc(n + 1, 0.0);
  for (std::size_t s = 0; s < n; ++s) arc[s + 1] = arc[s] + std::abs(seq[(s + 1) % n] - seq[s]);
  const auto& cp = layout.corner_pos;
  const std::array<std::size_t, 5> bounds{cp[0], cp[1], cp[2], cp[3], n};
  std::array<double, 4> side_len{};
  for (int k = 0; k < 4; ++k) side_len[k] = arc[bounds[k + 1]] - arc[bounds[k]];

  const double aspect = (side_len[0] + side_len[2]) / (side_len[1] + side_len[3]);
  const double m = modulus_from_aspect(aspect);
  const double K = ellip_k(m);
  const double Kp = ellip_kp(m);
  const double L = strip_length_from_modulus(m);

  std::vector<Prevertex> pv(n);
  pv[0] = {0.0, false};
  pv[cp[1]] = {L, false};
  pv[cp[2]] = {L, true};
  pv[cp[3]] = {0.0, true};
  layout.b_bottom = 0;
  layout.d_top = 0;
  for (int side = 0; side < 4; ++side) {
    for (std::size_t s = bounds[side] + 1; s < bounds[side + 1]; ++s) {
      double f = (arc[s] - arc[bounds[side]]) / side_len[side];
      if (side == 1 || side == 3) {
        if (std::abs(f - 0.5) < 1e-3) f = 0.5 - 1e-3;
      }
      Complex q;
      switch (side) {
        case 0: q = {K, f * Kp}; break;
        case 1: q = {K * (1.0 - 2.0 * f), Kp}; break;
        case 2: q = {-K, (1.0 - f) * Kp}; break;
        default: q = {K * (2.0 * f - 1.0), 0.0}; break;
      }
      Complex sn = jacobi_sn(q, m);
      if (!(sn.imag() > 0.0)) sn.imag(0.0);
      const Complex z = std::log(sn) / kPi;
      pv[s] = {z.real(), z.imag() > 0.5};
      if (side == 1 && !pv[s].top) ++layout.b_bottom;
      if (side == 3 && pv[s].top) ++layout.d_top;
    }
  }
  // Keep the order strict in case neighbouring vertices collapsed numerically.
  auto y = layout.encode(pv);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!std::isfinite(y(i))) y(i) = -5.0;
  return layout.decode(y);
}

}  // namespace

StripMapParams solve_parameter_problem(const Polygon& polygon, SolveReport* report) {
  const std::size_t n = polygon.size();
  const std::size_t c0 = polygon.corners[0];

  std::vector<Complex> seq(n);
  std::vector<double> seq_beta(n);
  std::vector<double> seq_alpha(n);
  for (std::size_t s = 0; s < n; ++s) {
    seq[s] = polygon.vertices[(c0 + s) % n];
    seq_alpha[s] = polygon.alphas[(c0 + s) % n];
    seq_beta[s] = seq_alpha[s] - 1.0;
  }
  Layout layout;
  layout.n = n;
  for (int k = 0; k < 4; ++k) layout.corner_pos[k] = (polygon.corners[k] + n - c0) % n;

  std::vector<Prevertex> pv = initial_guess(seq, layout);

  // Ratio conditions: drop the two sides adjacent to the vertex that turns
  // the most so the remaining N-2 sides fix the shape.
  std::size_t excluded = 0;
  for (std::size_t s = 1; s < n; ++s)
    if (std::abs(seq_beta[s]) > std::abs(seq_beta[excluded])) excluded = s;
  std::vector<std::size_t> sides;
  for (std::size_t i = 1; i + 1 < n; ++i) sides.push_back((excluded + i) % n);
  std::vector<double> target(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) {
    const std::size_t s = sides[i];
    target[i] = std::log(std::abs(seq[(s + 1) % n] - seq[s]));
  }

  auto residual = [&](const Layout& lay, const Eigen::VectorXd& y) {
    const auto z = lay.decode(y);
    StripIntegrator integ(z, seq_beta);
    Eigen::VectorXd r(static_cast<Eigen::Index>(n - 3));
    std::vector<double> logs(sides.size());
    try {
      for (std::size_t i = 0; i < sides.size(); ++i) {
        const std::size_t s = sides[i];
        logs[i] = std::log(std::abs(integ.integrate(z[s].point(), z[(s + 1) % n].point())));
      }
    } catch (const Error&) {
      // Trial layout collapsed prevertices together; reject it.
      r.setConstant(std::numeric_limits<double>::quiet_NaN());
      return r;
    }
    for (std::size_t i = 1; i < sides.size(); ++i)
      r(static_cast<Eigen::Index>(i - 1)) = (logs[i] - logs[0]) - (target[i] - target[0]);
    return r;
  };

  constexpr int kBudget = 100;
  constexpr double kTol = 1e-13;
  auto newton = [&](const Layout& lay, Eigen::VectorXd& y, int& iter) {
    Eigen::VectorXd r = residual(lay, y);
    if (!r.allFinite()) return std::numeric_limits<double>::infinity();
    for (; iter < kBudget && r.lpNorm<Eigen::Infinity>() > kTol; ++iter) {
      const Eigen::Index dim = y.size();
      Eigen::MatrixXd jac(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double h = 1e-6;
        Eigen::VectorXd yp = y;
        Eigen::VectorXd ym = y;
        yp(j) += h;
        ym(j) -= h;
        jac.col(j) = (residual(lay, yp) - residual(lay, ym)) / (2.0 * h);
      }
      Eigen::VectorXd step = -jac.colPivHouseholderQr().solve(r);
      if (!step.allFinite()) break;
      const double biggest = step.lpNorm<Eigen::Infinity>();
      if (biggest > 4.0) step *= 4.0 / biggest;
      double lambda = 1.0;
      bool accepted = false;
      for (int k = 0; k < 30; ++k, lambda *= 0.5) {
        const Eigen::VectorXd trial = y + lambda * step;
        const Eigen::VectorXd rt = residual(lay, trial);
        if (rt.allFinite() && rt.norm() < r.norm()) {
          y = trial;
          r = rt;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    return r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
  };

  int iter = 0;
  Eigen::VectorXd y = layout.encode(pv);
  double ratio_res = newton(layout, y, iter);

  // Vertices on the two end sides sit on either strip edge; the initial
  // guess fixes which. If that split was wrong, try the others.
  if (!(ratio_res <= 1e-10)) {
    const double L0 = pv[layout.corner_pos[1]].x;
    for (std::size_t bb = 0; bb <= layout.side_b() && !(ratio_res <= 1e-10); ++bb)
      for (std::size_t dt = 0; dt <= layout.side_d() && !(ratio_res <= 1e-10); ++dt) {
        if (bb == layout.b_bottom && dt == layout.d_top) continue;
        Layout alt = layout;
        alt.b_bottom = bb;
        alt.d_top = dt;
        std::vector<Prevertex> start = pv;
        const std::size_t cp1 = alt.corner_pos[1], cp2 = alt.corner_pos[2], cp3 = alt.corner_pos[3];
        for (std::size_t i = 0; i < bb; ++i) start[cp1 + 1 + i] = {L0 + 0.5 * static_cast<double>(i + 1), false};
        for (std::size_t i = 0; i < alt.side_b() - bb; ++i) start[cp2 - 1 - i] = {L0 + 0.5 * static_cast<double>(i + 1), true};
        for (std::size_t i = 0; i < dt; ++i) start[cp3 + 1 + i] = {-0.5 * static_cast<double>(i + 1), true};
        for (std::size_t i = 0; i < alt.side_d() - dt; ++i) start[n - 1 - i] = {-0.5 * static_cast<double>(i + 1), false};
        Eigen::VectorXd y_alt = alt.encode(start);
        int it = 0;
        const double res = newton(alt, y_alt, it);
        iter += it;
        if (res < ratio_res) {
          ratio_res = res;
          y = y_alt;
          layout = alt;
        }
      }
  }
  if (!(ratio_res <= 1e-10))
    throw Error(Errc::NoConvergence, "side-length residual " + std::to_string(ratio_res));

  const auto z_seq = layout.decode(y);
  StripMapParams params;
  params.prevertices.resize(n);
  for (std::size_t s = 0; s < n; ++s) params.prevertices[(c0 + s) % n] = z_seq[s];
  params.L = z_seq[layout.corner_pos[1]].x;
  params.M = 0;
  for (const auto& p : params.prevertices)
    if (!p.top) ++params.M;

  // Crowding: adjacent prevertices on one edge closer than 1e-12.
  for (bool top : {false, true}) {
    std::vector<double> xs;
    for (const auto& p : params.prevertices)
      if (p.top == top) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (xs[i] - xs[i - 1] < 1e-12) throw Error(Errc::CrowdingWarning, "prevertices closer than 1e-12");
  }

  const StripIntegrator integ = make_integrator(params, polygon);
  const std::size_t v1 = (c0 + 1) % n;
  const Complex first = integ.integrate(params.prevertices[c0].point(), params.prevertices[v1].point());
  params.A = (polygon.vertices[v1] - polygon.vertices[c0]) / first;
  params.C = polygon.vertices[c0];

  if (report) {
    report->iterations = iter;
    report->ratio_residual = ratio_res;
    report->side_residual = side_residual(params, polygon, integ);
  }
  return params;
}

}  // namespace scmt::scm
