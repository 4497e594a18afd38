#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "scmt/calibration/calibration.hpp"
#include "scmt/error.hpp"
#include "scmt/planner/dtw.hpp"
#include "scmt/planner/planner.hpp"

using namespace scmt;
using namespace scmt::planner;

namespace {

const sim::VehicleParams kTeacher{3.0, kPi / 3.0};

transfer::CapabilityHull degraded_hull() {
  std::vector<transfer::CommandPair> pairs;
  for (const Command& l : calibration::command_grid(5, 5)) pairs.push_back({{l.v / 3.0, 3.0 / 8.0 * l.gamma}, l});
  return transfer::build_capability_hull(pairs);
}

PrimitiveLibrary full_library(std::size_t n = 11) {
  return build_library(calibration::command_grid(n, n), nullptr, kTeacher, 1.0, 0.05);
}

// Independent greedy planner: own projection (dense search), own window
// sampling, own placement.
std::vector<std::size_t> oracle_greedy(Pose pose, const PathSpec& path, const PrimitiveLibrary& lib, std::size_t horizon,
                                       const Gains& gains) {
  std::vector<std::size_t> out;
  const double total = path.arc.back();
  auto point = [&](double s) {
    s = std::clamp(s, 0.0, total);
    std::size_t i = 0;
    while (i + 2 < path.arc.size() && path.arc[i + 1] <= s) ++i;
    const double t = (s - path.arc[i]) / (path.arc[i + 1] - path.arc[i]);
    return Point2{path.waypoints[i].x + t * (path.waypoints[i + 1].x - path.waypoints[i].x),
                  path.waypoints[i].y + t * (path.waypoints[i + 1].y - path.waypoints[i].y)};
  };
  for (std::size_t h = 0; h < horizon; ++h) {
    double s0 = 0.0, best_d = 1e300;
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
      const auto a = path.waypoints[i], b = path.waypoints[i + 1];
      const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      const double t = std::clamp(((pose.x - a.x) * (b.x - a.x) + (pose.y - a.y) * (b.y - a.y)) / len2, 0.0, 1.0);
      const double d = std::hypot(pose.x - a.x - t * (b.x - a.x), pose.y - a.y - t * (b.y - a.y));
      if (d < best_d) {
        best_d = d;
        s0 = path.arc[i] + t * (path.arc[i + 1] - path.arc[i]);
      }
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    Pose end{};
    for (std::size_t k = 0; k < lib.primitives.size(); ++k) {
      if (!lib.admissible[k]) continue;
      const auto& prim = lib.primitives[k];
      std::vector<Point2> placed, window;
      double len = 0.0;
      for (std::size_t i = 0; i < prim.states.size(); ++i) {
        const auto& s = prim.states[i];
        placed.push_back({pose.x + std::cos(pose.theta) * s.x - std::sin(pose.theta) * s.y,
                          pose.y + std::sin(pose.theta) * s.x + std::cos(pose.theta) * s.y});
        if (i > 0) len += std::hypot(s.x - prim.states[i - 1].x, s.y - prim.states[i - 1].y);
      }
      for (std::size_t i = 0; i < prim.states.size(); ++i) window.push_back(point(s0 + len * i / (prim.states.size() - 1)));
      const double end_theta = pose.theta + prim.states.back().theta;
      const double cost = gains.k_d * dtw(window, placed) +
                          gains.k_theta * std::abs(wrap_angle(path.heading_at(s0 + len) - end_theta));
      if (cost < best) {
        best = cost;
        pick = k;
        end = {placed.back().x, placed.back().y, wrap_angle(end_theta)};
      }
    }
    out.push_back(pick);
    pose = end;
  }
  return out;
}

}  // namespace

TEST_CASE("primitive rollouts") {
  const auto straight = generate_primitive({1.0, 0.0}, kTeacher, 1.0, 0.05);
  CHECK(straight.states.size() == 21);
  CHECK(straight.states.back().x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(straight.states.back().y == 0.0);
  const auto turn = generate_primitive({1.0, 1.0}, kTeacher, 1.0, 0.05);
  CHECK(std::abs(turn.states.back().theta - kPi / 3.0) < 1e-9);
}

TEST_CASE("library admissibility") {
  SUBCASE("hull over the whole box admits everything") {
    std::vector<transfer::CommandPair> pairs;
    for (const Command& c : {Command{-0.1, -1.1}, Command{1.1, -1.1}, Command{1.1, 1.1}, Command{-0.1, 1.1}})
      pairs.push_back({c, c});
    const auto hull = transfer::build_capability_hull(pairs);
    const auto lib = build_library(calibration::command_grid(11, 11), &hull, kTeacher, 1.0, 0.05);
    CHECK(lib.admissible_count() == 121);
  }
  SUBCASE("degraded hull keeps the strict interior grid points") {
    const auto hull = degraded_hull();
    const auto grid = calibration::command_grid(11, 11);
    const auto lib = build_library(grid, &hull, kTeacher, 1.0, 0.05);
    std::size_t analytic = 0;
    for (const Command& c : grid) analytic += c.v > 1e-9 && c.v < 1.0 / 3.0 - 1e-9 && std::abs(c.gamma) < 0.375 - 1e-9;
    CHECK(analytic == 9);
    CHECK(lib.admissible_count() == analytic);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (lib.admissible[i]) CHECK(hull.contains_strictly(grid[i]));
      else CHECK_FALSE(hull.contains_strictly(grid[i]));
    }
  }
  SUBCASE("nothing inside") {
    std::vector<transfer::CommandPair> pairs{{{0.01, 0.01}, {}}, {{0.02, 0.01}, {}}, {{0.02, 0.02}, {}}};
    const auto hull = transfer::build_capability_hull(pairs);
    try {
      build_library(calibration::command_grid(11, 11), &hull, kTeacher, 1.0, 0.05);
      FAIL("expected EmptyAdmissibleSet");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyAdmissibleSet);
    }
  }
}

TEST_CASE("primitive cost") {
  const auto prim = generate_primitive({0.5, 0.0}, kTeacher, 1.0, 0.05);
  const auto placed = place_primitive(prim, {1.0, 2.0, 0.0});
  std::vector<Point2> seg;
  for (const auto& p : placed) seg.push_back({p.x, p.y});
  CHECK(primitive_cost(seg, 0.0, placed, {}) == 0.0);

  std::vector<Point2> shifted = seg;
  for (auto& p : shifted) p.y += 0.1;
  CHECK(primitive_cost(shifted, 1.0, placed, {2.0, 0.0}) == doctest::Approx(2.0 * dtw(shifted, seg)));
  CHECK(primitive_cost(seg, 3.0 * kPi / 2.0, placed, {0.0, 1.0}) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("straight path picks a straight primitive each step") {
  const auto path = PathSpec::from_waypoints({{0, 0}, {20, 0}});
  const auto lib = full_library();
  const auto plan = plan_step({0, 0, 0}, path, lib, 3, {});
  for (std::size_t k : plan.chosen) CHECK(lib.primitives[k].command.gamma == 0.0);
}

TEST_CASE("horizon one equals exhaustive argmin") {
  const auto path = make_s_path(3.0, 1.0, 0.05);
  const auto lib = full_library();
  const Pose pose{0.3, 0.2, 0.1};
  const auto plan = plan_step(pose, path, lib, 1, {});
  const double s0 = path.project({pose.x, pose.y});
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < lib.primitives.size(); ++i) {
    const auto placed = place_primitive(lib.primitives[i], pose);
    const double len = lib.primitives[i].arc_length();
    const double c = primitive_cost(path.sample(s0, len, placed.size()), path.heading_at(s0 + len), placed, {});
    if (c < best) best = c, arg = i;
  }
  CHECK(plan.chosen.front() == arg);
  CHECK(plan.costs.front() == best);
}

TEST_CASE("greedy plan matches an independent greedy planner on the S-path") {
  const auto path = make_s_path(3.0, 1.0, 0.05);
  const auto hull = degraded_hull();
  const auto lib = build_library(calibration::command_grid(21, 21), &hull, kTeacher, 1.0, 0.05);
  for (const Pose& pose : {Pose{0, 0, 0}, Pose{3.5, 1.5, 1.0}, Pose{-1.9, 9.2, 1.7}, Pose{1.0, 6.1, 3.0}})
    CHECK(plan_step(pose, path, lib, 2, {}).chosen == oracle_greedy(pose, path, lib, 2, {}));
}

TEST_CASE("plan segments chain exactly") {
  const auto path = make_s_path(3.0, 1.0, 0.05);
  const auto plan = plan_step({0.1, -0.2, 0.3}, path, full_library(), 4, {});
  REQUIRE(plan.segments.size() == 4);
  for (std::size_t k = 1; k < plan.segments.size(); ++k) {
    const Pose& a = plan.segments[k - 1].back();
    const Pose& b = plan.segments[k].front();
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.theta == b.theta);
  }
  CHECK(plan.world_states.size() == 4 * 20 + 1);
}

TEST_CASE("scaling both gains keeps the choice") {
  const auto path = make_s_path(3.0, 1.0, 0.05);
  const auto lib = full_library();
  for (double c : {0.1, 3.0, 17.0}) {
    const Pose pose{2.0, 0.5, 0.4};
    CHECK(plan_step(pose, path, lib, 2, {c, 0.5 * c}).chosen == plan_step(pose, path, lib, 2, {1.0, 0.5}).chosen);
  }
}

TEST_CASE("replan threshold and trigger") {
  const std::vector<Point2> none;
  CHECK(std::isinf(replan_threshold({0, 0, 0}, none, 0.5)));
  const std::vector<Point2> one{{2, 0}};
  CHECK(replan_threshold({0, 0, 0}, one, 0.5) == doctest::Approx(1.0));
  const std::vector<Point2> two{{0, 3}, {1, 0}};
  CHECK(replan_threshold({0, 0, 0}, two, 0.5) == doctest::Approx(0.5));
  CHECK_FALSE(should_replan(0.0, 1.0));
  CHECK_FALSE(should_replan(5.0, std::numeric_limits<double>::infinity()));
  CHECK(should_replan(1.1, 1.0));
  CHECK_FALSE(should_replan(1.0, 1.0));
}

TEST_CASE("s-path geometry") {
  const auto path = make_s_path(3.0, 1.0, 0.05);
  CHECK(path.goal.x == doctest::Approx(2.0));
  CHECK(path.goal.y == doctest::Approx(12.0));
  CHECK(path.length() == doctest::Approx(2.0 * kPi * 3.0 + 2.0).epsilon(1e-3));
  CHECK(path.distance_to({4.0, 3.0}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(path.distance_to({-2.0, 9.0}) < 1e-3);
}

TEST_CASE("library json round trip") {
  const auto hull = degraded_hull();
  const auto lib = build_library(calibration::command_grid(5, 5), &hull, kTeacher, 1.0, 0.05);
  const auto back = library_from_json(library_to_json(lib));
  REQUIRE(back.primitives.size() == lib.primitives.size());
  CHECK(back.admissible == lib.admissible);
  CHECK(back.dt == lib.dt);
  for (std::size_t i = 0; i < lib.primitives.size(); ++i) {
    CHECK(back.primitives[i].command == lib.primitives[i].command);
    CHECK(back.primitives[i].states.back().x == lib.primitives[i].states.back().x);
  }
}
