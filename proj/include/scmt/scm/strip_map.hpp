#pragma once

#include <cstddef>
#include <vector>

#include "scmt/scm/polygon.hpp"
#include "scmt/scm/quadrature.hpp"
#include "scmt/types.hpp"

namespace scmt::scm {

/// A point on the boundary of the strip 0 <= Im z <= 1.
struct Prevertex {
  double x = 0.0;
  bool top = false;

  Complex point() const { return {x, top ? 1.0 : 0.0}; }
};

/// Solved strip -> polygon map w = C + A * integral_0^z prod f_j.
struct StripMapParams {
  /// One prevertex per polygon vertex, in polygon order.
  std::vector<Prevertex> prevertices;
  /// Number of prevertices on the bottom edge.
  std::size_t M = 0;
  /// Strip length: the prevertex of the second corner sits at z = L.
  double L = 0.0;
  Complex A{1.0, 0.0};
  /// Image of z = 0, i.e. the first corner vertex.
  Complex C{0.0, 0.0};
  double theta_plus = kPi;
  double theta_minus = kPi;
};

/// Factor j of the strip integrand; j = 0 is the exponential end factor and
/// j = 1..N the vertex factors (polygon vertex j - 1), raised to alpha - 1.
Complex strip_factor(Complex z, std::size_t j, const StripMapParams& params, const Polygon& polygon);

/// The bare term -i sinh(+-pi/2 (z - z_j)) whose power forms a vertex factor.
Complex strip_factor_base(Complex z, const Prevertex& pv);

/// Compound Gauss-Jacobi integration of prod_j base_j(z)^{beta_j} along
/// straight segments of the strip.
class StripIntegrator {
 public:
  StripIntegrator() = default;
  StripIntegrator(std::vector<Prevertex> prevertices, std::vector<double> exponents, int nodes = 8);

  Complex integrand(Complex z) const;

  /// Integral along the segment [a, b]. Prevertices may coincide with either
  /// endpoint but not lie strictly inside. Throws Error{SingularInterior}.
  Complex integrate(Complex a, Complex b) const;

  const std::vector<Prevertex>& prevertices() const { return prevertices_; }
  const std::vector<double>& exponents() const { return exponents_; }
  int nodes() const { return nodes_; }

 private:
  /// Integrand divided by |z - z_skip|^beta_skip (skip < 0: plain integrand).
  Complex scaled_integrand(Complex z, int skip) const;
  int prevertex_at(Complex z) const;
  double nearest_singularity(Complex a, Complex b, int skip) const;
  Complex integrate_singular(Complex a, Complex b, int sa) const;
  Complex integrate_regular(Complex a, Complex b, int depth) const;

  std::vector<Prevertex> prevertices_;
  std::vector<Complex> points_;
  std::vector<double> exponents_;
  std::vector<QuadratureRule> jacobi_rules_;
  QuadratureRule legendre_;
  int nodes_ = 8;
};

/// Integral of the strip integrand of `params` over [a, b].
Complex integrate_strip(Complex a, Complex b, const StripMapParams& params, const Polygon& polygon);

struct SolveReport {
  int iterations = 0;
  /// Max |log(I_k / I_ref) - log(len_k / len_ref)| over the solved ratios.
  double ratio_residual = 0.0;
  /// Max over all sides of |A * I_k - (w_{k+1} - w_k)| / diameter.
  double side_residual = 0.0;
};

/// Solves the side-length conditions for the prevertices and L, then
/// computes A and C. Throws Error{NoConvergence | CrowdingWarning}.
StripMapParams solve_parameter_problem(const Polygon& polygon, SolveReport* report = nullptr);

StripIntegrator make_integrator(const StripMapParams& params, const Polygon& polygon, int nodes = 8);

/// Max over all sides of |A * integral_{z_k}^{z_{k+1}} - (w_{k+1} - w_k)| / diameter.
double side_residual(const StripMapParams& params, const Polygon& polygon, const StripIntegrator& integ);

/// w = C + A * integral_0^z. Throws Error{OutsideStrip}.
Complex strip_to_polygon(Complex z, const StripMapParams& params, const StripIntegrator& integ);

bool in_strip(Complex z, double tol = 1e-12);

}  // namespace scmt::scm
