#include "scmt/scm/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "scmt/error.hpp"

namespace scmt::scm {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

void check_modulus(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw Error(Errc::ModulusOutOfRange, "m must lie in [0, 1]");
}

}  // namespace

double ellip_k(double m) {
  check_modulus(m);
  if (m == 1.0) return std::numeric_limits<double>::infinity();
  return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

double ellip_kp(double m) {
  check_modulus(m);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return kPi / (2.0 * agm(1.0, std::sqrt(m)));
}

SnCnDn jacobi_sncndn(double u, double m) {
  check_modulus(m);
  const double mc = 1.0 - m;
  if (mc == 0.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  constexpr int kDepth = 16;
  std::array<double, kDepth> am{};
  std::array<double, kDepth> bn{};
  double a = 1.0;
  double c = 1.0;
  double emc = mc;
  int l = 0;
  for (; l < kDepth; ++l) {
    am[l] = a;
    emc = std::sqrt(emc);
    bn[l] = emc;
    c = 0.5 * (a + emc);
    if (std::abs(a - emc) <= 1e-15 * a) {
      ++l;
      break;
    }
    emc *= a;
    a = c;
  }
  u *= c;
  double sn = std::sin(u);
  double cn = std::cos(u);
  double dn = 1.0;
  if (sn != 0.0) {
    double ratio = cn / sn;
    c *= ratio;
    while (l-- > 0) {
      const double b = am[l];
      ratio *= c;
      c *= dn;
      dn = (bn[l] + ratio) / (b + ratio);
      ratio = c / b;
    }
    const double s = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -s : s;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

Complex jacobi_sn(Complex q, double m) {
  if (!(m >= 0.0 && m < 1.0)) throw Error(Errc::ModulusOutOfRange, "m must lie in [0, 1)");
  const SnCnDn re = jacobi_sncndn(q.real(), m);
  if (q.imag() == 0.0) return {re.sn, 0.0};
  // Jacobi imaginary transformation combined with the addition theorem.
  const SnCnDn im = jacobi_sncndn(q.imag(), 1.0 - m);
  const double denom = im.cn * im.cn + m * re.sn * re.sn * im.sn * im.sn;
  const Complex num{re.sn * im.dn, re.cn * re.dn * im.sn * im.cn};
  if (denom == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return num / denom;
}

double aspect_from_modulus(double m) { return ellip_kp(m) / (2.0 * ellip_k(m)); }

double modulus_from_aspect(double aspect) {
  // aspect is decreasing in m; bisect in log m over [1e-300, 1).
  double lo = std::log(1e-300);
  double hi = std::log1p(-1e-16);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (aspect_from_modulus(std::exp(mid)) > aspect)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return std::exp(0.5 * (lo + hi));
}

double modulus_from_strip_length(double strip_length) {
  return std::exp(-2.0 * kPi * strip_length);
}

double strip_length_from_modulus(double m) { return -std::log(m) / (2.0 * kPi); }

}  // namespace scmt::scm
