#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <complex>

#include "scmt/error.hpp"
#include "scmt/scm/elliptic.hpp"

using namespace scmt;
using namespace scmt::scm;

namespace {

double boost_k(double m) { return boost::math::ellint_1(std::sqrt(m)); }

// sn from Jacobi theta series with nome exp(-pi K'/K).
Complex theta_sn(Complex u, double m) {
  const double K = boost_k(m);
  const double Kp = boost_k(1.0 - m);
  const double nome = std::exp(-kPi * Kp / K);
  const Complex z = kPi * u / (2.0 * K);
  Complex t1 = 0.0, t4 = 1.0;
  double t2 = 0.0, t3 = 1.0;
  for (int n = 0; n < 40; ++n) {
    const double h = std::pow(nome, (n + 0.5) * (n + 0.5));
    const double sgn = n % 2 ? -1.0 : 1.0;
    t1 += 2.0 * sgn * h * std::sin(double(2 * n + 1) * z);
    t2 += 2.0 * h;
  }
  for (int n = 1; n < 40; ++n) {
    const double g = std::pow(nome, double(n) * n);
    const double sgn = n % 2 ? -1.0 : 1.0;
    t3 += 2.0 * g;
    t4 += 2.0 * sgn * g * std::cos(2.0 * n * z);
  }
  return (t3 / t2) * t1 / t4;
}

}  // namespace

TEST_CASE("complete integrals match boost") {
  for (double m : {0.0, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    CHECK(ellip_k(m) == doctest::Approx(boost_k(m)).epsilon(1e-13));
    if (m > 0.0) CHECK(ellip_kp(m) == doctest::Approx(boost_k(1.0 - m)).epsilon(1e-12));
  }
  CHECK(ellip_k(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("K' stays accurate for tiny m") {
  // K'(m) ~ ln(4 / sqrt(m)) as m -> 0.
  const double m = 1e-20;
  CHECK(ellip_kp(m) == doctest::Approx(std::log(4.0 / std::sqrt(m))).epsilon(1e-12));
}

TEST_CASE("real sn cn dn match boost") {
  for (double m : {0.0, 0.2, 0.5, 0.8, 0.95, 1.0})
    for (double u : {-3.0, -0.7, 0.0, 0.4, 1.3, 2.9}) {
      double cn = 0.0, dn = 0.0;
      const double sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn, &dn);
      const auto r = jacobi_sncndn(u, m);
      CHECK(r.sn == doctest::Approx(sn).epsilon(1e-12));
      CHECK(r.cn == doctest::Approx(cn).epsilon(1e-12));
      CHECK(r.dn == doctest::Approx(dn).epsilon(1e-12));
    }
}

TEST_CASE("complex sn matches theta series inside the rectangle") {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double m = 0.05 + 0.1 * i;
    const double K = boost_k(m), Kp = boost_k(1.0 - m);
    for (int j = 0; j < 10; ++j) {
      const Complex q{(-0.9 + 0.2 * j) * K, (0.05 + 0.09 * j) * Kp};
      const Complex ref = theta_sn(q, m);
      worst = std::max(worst, std::abs(jacobi_sn(q, m) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("sn degenerates to sin at m = 0") {
  for (Complex q : {Complex{0.3, 0.0}, Complex{-1.2, 0.4}, Complex{1.5, 1.1}})
    CHECK(std::abs(jacobi_sn(q, 0.0) - std::sin(q)) < 1e-12);
}

TEST_CASE("sn has its pole at iK'") {
  const double m = 0.4;
  CHECK(std::abs(jacobi_sn({0.0, ellip_kp(m)}, m)) > 1e12);
}

TEST_CASE("sn rejects parameters outside [0, 1)") {
  CHECK_THROWS_AS(jacobi_sn({0.1, 0.1}, 1.0), Error);
  CHECK_THROWS_AS(jacobi_sn({0.1, 0.1}, -0.1), Error);
  try {
    jacobi_sn({0.1, 0.1}, 1.5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ModulusOutOfRange);
  }
}

TEST_CASE("aspect and modulus invert each other") {
  for (double aspect : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
    const double m = modulus_from_aspect(aspect);
    CHECK(aspect_from_modulus(m) == doctest::Approx(aspect).epsilon(1e-12));
  }
  // K'/K = 2 is the singular value k = (sqrt 2 - 1)^2.
  const double k = std::pow(std::sqrt(2.0) - 1.0, 2);
  CHECK(modulus_from_aspect(1.0) == doctest::Approx(k * k).epsilon(1e-10));
}

TEST_CASE("strip length and modulus") {
  for (double L : {0.1, 0.5, 1.0, 3.0}) {
    const double m = modulus_from_strip_length(L);
    CHECK(m == doctest::Approx(std::exp(-2.0 * kPi * L)));
    CHECK(strip_length_from_modulus(m) == doctest::Approx(L).epsilon(1e-14));
  }
}
