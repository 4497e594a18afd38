#include <doctest.h>

#include <random>

#include "../support/random_polygon.hpp"
#include "scmt/error.hpp"
#include "scmt/scm/elliptic.hpp"
#include "scmt/scm/rectangle_map.hpp"

using namespace scmt;
using namespace scmt::scm;

namespace {

RectangleMap rect_map(double a, double b) {
  return RectangleMap::build(validate_polygon(std::vector<Complex>{{0, 0}, {a, 0}, {a, b}, {0, b}}, {0, 1, 2, 3}));
}

Polygon pentagon() {
  return validate_polygon(std::vector<Complex>{{0, 0}, {2, 0}, {2.5, 1}, {1, 2}, {-0.3, 1.2}}, {0, 1, 2, 3});
}

}  // namespace

TEST_CASE("rectangles reproduce their aspect ratio") {
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) CHECK(rect_map(a, 1.0).aspect() == doctest::Approx(a).epsilon(1e-9));
  CHECK(rect_map(1.0, 1.0).modulus_m() == doctest::Approx(std::pow(std::sqrt(2.0) - 1.0, 4)).epsilon(1e-9));
}

TEST_CASE("parameter problem solves to the side ratios") {
  SolveReport report;
  const auto map = RectangleMap::build(pentagon(), &report);
  CHECK(report.side_residual < 1e-10);
  for (std::size_t k = 0; k < map.polygon().size(); ++k)
    CHECK(std::abs(map.strip_to_polygon(map.strip().prevertices[k].point()) - map.polygon().vertices[k]) < 1e-10);
}

TEST_CASE("corners map to corners") {
  const auto map = RectangleMap::build(pentagon());
  for (int k = 0; k < 4; ++k) {
    const Complex w = map.polygon().vertices[map.polygon().corners[k]];
    CHECK(std::abs(map.rect_to_polygon(map.rect_corner(k)) - w) < 1e-9);
    CHECK(std::abs(map.polygon_to_rect(w) - map.rect_corner(k)) < 1e-9);
  }
}

TEST_CASE("rectangle to strip corner correspondence") {
  const auto map = rect_map(2.0, 1.0);
  const double L = map.strip().L;
  CHECK(std::abs(map.rect_to_strip({map.K(), 0.0}) - Complex{0.0, 0.0}) < 1e-12);
  CHECK(std::abs(map.rect_to_strip({map.K(), map.Kp()}) - Complex{L, 0.0}) < 1e-9);
  CHECK(std::abs(map.rect_to_strip({-map.K(), map.Kp()}) - Complex{L, 1.0}) < 1e-9);
  CHECK(std::abs(map.rect_to_strip({-map.K(), 0.0}) - Complex{0.0, 1.0}) < 1e-12);
}

TEST_CASE("strip_to_rect inverts rect_to_strip") {
  const auto map = RectangleMap::build(pentagon());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.95, 0.95), v(0.02, 0.98);
  for (int i = 0; i < 50; ++i) {
    const Complex q{u(rng) * map.K(), v(rng) * map.Kp()};
    CHECK(std::abs(map.strip_to_rect(map.rect_to_strip(q)) - q) < 1e-9);
  }
}

TEST_CASE("similarity invariance of the aspect") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const Polygon p = testing::random_star_polygon(rng, 5);
    const double base = RectangleMap::build(p).aspect();
    const Complex rot = std::polar(1.7, 0.9);
    std::vector<Complex> moved;
    for (auto z : p.vertices) moved.push_back(rot * z + Complex{3.0, -2.0});
    CHECK(std::abs(RectangleMap::build(validate_polygon(moved, p.corners)).aspect() - base) < 1e-8);
  }
}

TEST_CASE("polygon round trip on random polygons") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {4u, 5u, 6u}) {
    const Polygon p = testing::random_star_polygon(rng, n);
    const auto map = RectangleMap::build(p);
    for (int i = 0; i < 20; ++i) {
      const Complex w = testing::random_interior_point(rng, p);
      const Complex q = map.polygon_to_rect(w);
      CHECK(map.in_rectangle(q));
      CHECK(std::abs(map.rect_to_polygon(q) - w) < 1e-8 * p.diameter());
    }
  }
}

TEST_CASE("doubling the quadrature order leaves the map unchanged") {
  std::mt19937_64 rng(5);
  const Polygon p = testing::random_star_polygon(rng, 5);
  const auto map = RectangleMap::build(p);
  const auto fine = make_integrator(map.strip(), p, 16);
  std::uniform_real_distribution<double> x(-1.0, map.strip().L + 1.0), y(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const Complex z{x(rng), y(rng)};
    CHECK(std::abs(strip_to_polygon(z, map.strip(), fine) - map.strip_to_polygon(z)) < 1e-10 * p.diameter());
  }
}

TEST_CASE("forward map preserves orientation and is continuous") {
  const auto map = RectangleMap::build(pentagon());
  const double h = 1e-4;
  for (int i = 1; i < 10; ++i)
    for (int j = 1; j < 10; ++j) {
      const Complex q{map.K() * (-1.0 + 0.2 * i), map.Kp() * 0.1 * j};
      const Complex w = map.rect_to_polygon(q);
      const Complex wx = map.rect_to_polygon(q + h);
      const Complex wy = map.rect_to_polygon(q + Complex{0.0, h});
      // Conformal and orientation preserving: wy - w ~ i (wx - w).
      const Complex ratio = (wy - w) / (wx - w);
      CHECK(std::abs(ratio - Complex{0.0, 1.0}) < 1e-2);
      CHECK(std::abs(wx - w) < 1e3 * h);
    }
}

TEST_CASE("injective on a grid") {
  const auto map = RectangleMap::build(pentagon());
  std::vector<Complex> images;
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j)
      images.push_back(map.rect_to_polygon({map.K() * (-0.96 + 0.16 * i), map.Kp() * (0.02 + 0.08 * j)}));
  double closest = 1e9;
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b) closest = std::min(closest, std::abs(images[a] - images[b]));
  CHECK(closest > 1e-6);
}

TEST_CASE("domain errors") {
  const auto map = RectangleMap::build(pentagon());
  CHECK_THROWS_AS(map.polygon_to_rect({10.0, 10.0}), Error);
  CHECK_THROWS_AS(map.rect_to_polygon({2.0 * map.K(), 0.1}), Error);
  CHECK_THROWS_AS(map.strip_to_polygon({0.0, 1.5}), Error);
  try {
    map.polygon_to_rect({10.0, 10.0});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutsidePolygon);
  }
}
