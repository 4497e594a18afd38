#include <doctest.h>

#include <algorithm>
#include <random>

#include "scmt/error.hpp"
#include "scmt/transfer/hull.hpp"

using namespace scmt;
using namespace scmt::transfer;

namespace {

std::vector<CommandPair> grid_pairs(int n) {
  std::vector<CommandPair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Command t{i / double(n - 1) / 3.0, (-1.0 + 2.0 * j / double(n - 1)) * 3.0 / 8.0};
      pairs.push_back({t, {3.0 * t.v, 8.0 / 3.0 * t.gamma}});
    }
  return pairs;
}

// Brute force: a point is on the hull boundary when some line through it has
// every other point on one side.
bool on_hull_brute(const std::vector<CommandPair>& pairs, std::size_t k) {
  const Complex p = pairs[k].teacher.as_complex();
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Complex d = pairs[j].teacher.as_complex() - p;
    if (j == k || std::abs(d) == 0.0) continue;
    bool left = true, right = true;
    for (const auto& q : pairs) {
      const double cr = (std::conj(d) * (q.teacher.as_complex() - p)).imag();
      if (cr < -1e-12) left = false;
      if (cr > 1e-12) right = false;
    }
    if (left || right) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("5x5 grid hull is its 16 boundary points") {
  const auto pairs = grid_pairs(5);
  const auto hull = build_capability_hull(pairs);
  CHECK(hull.hull_vertices.size() == 16);
  std::size_t brute = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) brute += on_hull_brute(pairs, k);
  CHECK(brute == 16);
  for (std::size_t k : hull.hull_vertices) CHECK(on_hull_brute(pairs, k));
}

TEST_CASE("hull is counterclockwise and contains every pair") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0), g(-1.0, 1.0);
  std::vector<CommandPair> pairs;
  for (int i = 0; i < 40; ++i) pairs.push_back({{u(rng), g(rng)}, {u(rng), g(rng)}});
  const auto hull = build_capability_hull(pairs);
  const auto b = hull.boundary();
  double area2 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) area2 += (std::conj(b[i]) * b[(i + 1) % b.size()]).imag();
  CHECK(area2 > 0.0);
  for (const auto& p : pairs) CHECK(hull.contains(p.teacher));
}

TEST_CASE("triangle hull") {
  const auto hull = build_capability_hull({{{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}});
  CHECK(hull.hull_vertices.size() == 3);
  CHECK(hull.contains({0.2, 0.2}));
  CHECK(hull.contains({0.5, 0.5}));
  CHECK_FALSE(hull.contains_strictly({0.5, 0.5}));
  CHECK(hull.contains_strictly({0.2, 0.2}));
  CHECK_FALSE(hull.contains({0.6, 0.6}));
}

TEST_CASE("collinear pairs are degenerate") {
  try {
    build_capability_hull({{{0, 0}, {0, 0}}, {{0.5, 0.5}, {0, 0}}, {{1, 1}, {0, 0}}});
    FAIL("expected DegenerateHull");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateHull);
  }
  CHECK_THROWS_AS(build_capability_hull({{{0, 0}, {0, 0}}, {{1, 1}, {0, 0}}}), Error);
}
