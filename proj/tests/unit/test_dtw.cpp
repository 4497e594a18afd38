#include <doctest.h>

#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "scmt/planner/dtw.hpp"

using scmt::Point2;
using scmt::planner::dtw;

namespace {

// Enumerates every monotone alignment path and keeps the cheapest running sum.
double brute_dtw(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double s) {
    if (i == a.size() - 1 && j == b.size() - 1) {
      best = std::min(best, s);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, s + scmt::distance(a[i + 1], b[j]));
    if (j + 1 < b.size()) walk(i, j + 1, s + scmt::distance(a[i], b[j + 1]));
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, s + scmt::distance(a[i + 1], b[j + 1]));
  };
  walk(0, 0, scmt::distance(a[0], b[0]));
  return best;
}

}  // namespace

TEST_CASE("dtw examples") {
  const std::vector<Point2> p{{0, 0}, {1, 0}};
  CHECK(dtw(p, p) == 0.0);
  CHECK(dtw(p, std::vector<Point2>{{0, 1}, {1, 1}}) == doctest::Approx(2.0));
  const std::vector<Point2> one{{0, 0}};
  const std::vector<Point2> three{{1, 0}, {0, 2}, {3, 4}};
  CHECK(dtw(one, three) == doctest::Approx(1.0 + 2.0 + 5.0));
  CHECK(dtw(three, one) == doctest::Approx(8.0));
}

TEST_CASE("dtw equals brute-force alignment enumeration") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> len(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point2> a(len(rng)), b(len(rng));
    for (auto& p : a) p = {u(rng), u(rng)};
    for (auto& p : b) p = {u(rng), u(rng)};
    CHECK(dtw(a, b) == brute_dtw(a, b));
    CHECK(dtw(a, b) >= 0.0);
    CHECK(dtw(a, a) == 0.0);
  }
}

TEST_CASE("dtw rejects empty input") {
  const std::vector<Point2> p{{0, 0}};
  CHECK_THROWS_AS(dtw({}, p), std::invalid_argument);
}
