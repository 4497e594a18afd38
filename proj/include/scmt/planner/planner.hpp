#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scmt/sim/vehicle.hpp"
#include "scmt/transfer/hull.hpp"
#include "scmt/types.hpp"

namespace scmt::planner {

/// Desired path as a polyline with cumulative arc length and per-sample
/// tangent heading.
struct PathSpec {
  std::vector<Point2> waypoints;
  Point2 goal;
  std::vector<double> headings;
  std::vector<double> arc;

  /// Drops consecutive duplicates; the goal is the last waypoint.
  static PathSpec from_waypoints(std::vector<Point2> points);

  double length() const { return arc.empty() ? 0.0 : arc.back(); }
  Point2 point_at(double s) const;
  double heading_at(double s) const;
  /// Arc length of the closest point on the polyline.
  double project(Point2 p) const;
  double distance_to(Point2 p) const;
  /// `count` points equally spaced in arc length over [s0, s0 + len],
  /// clamped to the path end.
  std::vector<Point2> sample(double s0, double len, std::size_t count) const;
};

/// Two joined half circles of `radius` (left turn then right turn) with
/// straight lead-in / lead-out, starting at the origin heading +x.
PathSpec make_s_path(double radius, double straight, double spacing);

/// Command held for `duration`, rolled out from the body-frame origin.
struct Primitive {
  Command command;
  double duration = 0.0;
  double dt = 0.0;
  std::vector<Pose> states;

  double arc_length() const;
};

struct PrimitiveLibrary {
  std::vector<Primitive> primitives;
  double dt = 0.0;
  std::vector<bool> admissible;

  std::size_t admissible_count() const;
};

struct Gains {
  double k_d = 1.0;
  double k_theta = 0.5;
};

struct PlanResult {
  std::vector<std::size_t> chosen;
  /// One world-frame segment per chosen primitive; segment k + 1 starts at
  /// the last state of segment k.
  std::vector<std::vector<Pose>> segments;
  /// Segments concatenated without repeating shared endpoints.
  std::vector<Pose> world_states;
  std::vector<double> costs;
};

/// Forward-Euler rollout of the teacher model from (0, 0, 0).
Primitive generate_primitive(Command u, const sim::VehicleParams& teacher, double duration, double dt);

/// Generates every grid primitive; admissible = strictly inside the hull
/// (all admissible when hull is null). Throws Error{EmptyAdmissibleSet}.
PrimitiveLibrary build_library(const std::vector<Command>& grid, const transfer::CapabilityHull* hull,
                               const sim::VehicleParams& teacher, double duration, double dt);

/// Body-frame primitive placed at a world pose.
std::vector<Pose> place_primitive(const Primitive& prim, const Pose& at);

/// k_d * DTW(segment, primitive positions) + k_theta * |wrap(path_heading - end heading)|.
double primitive_cost(std::span<const Point2> segment, double path_heading, std::span<const Pose> placed,
                      const Gains& gains);

/// Greedy horizon plan: at each step place every admissible primitive at
/// the current pose, score it against the path window of equal arc length
/// starting at the nearest path point, keep the cheapest (lowest index on
/// ties) and advance. Throws Error{EmptyAdmissibleSet}.
PlanResult plan_step(const Pose& pose, const PathSpec& path, const PrimitiveLibrary& lib, std::size_t horizon,
                     const Gains& gains);

/// eta * distance to the nearest obstacle, +inf with none.
double replan_threshold(const Pose& pose, std::span<const Point2> obstacles_in_fov, double eta);

inline bool should_replan(double deviation, double epsilon) { return deviation > epsilon; }

/// Minimum distance from p to the polyline through the given poses.
double distance_to_polyline(Point2 p, std::span<const Pose> polyline);

std::string library_to_json(const PrimitiveLibrary& lib);
PrimitiveLibrary library_from_json(const std::string& text);

}  // namespace scmt::planner
