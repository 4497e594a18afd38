#include "scmt/planner/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "scmt/error.hpp"
#include "scmt/planner/dtw.hpp"

namespace scmt::planner {

namespace {

Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

double segment_distance(Point2 p, Point2 a, Point2 b, double* t_out = nullptr) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  if (t_out) *t_out = t;
  return distance(p, lerp(a, b, t));
}

}  // namespace

// ---------------------------------------------------------------------------
// PathSpec

PathSpec PathSpec::from_waypoints(std::vector<Point2> points) {
  PathSpec path;
  for (const Point2& p : points)
    if (path.waypoints.empty() || distance(path.waypoints.back(), p) > 1e-12) path.waypoints.push_back(p);
  if (path.waypoints.size() < 2) throw Error(Errc::ConfigInvalid, "path needs two distinct waypoints");
  const std::size_t n = path.waypoints.size();
  path.goal = path.waypoints.back();
  path.arc.assign(n, 0.0);
  path.headings.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) path.arc[i] = path.arc[i - 1] + distance(path.waypoints[i - 1], path.waypoints[i]);
  for (std::size_t i = 0; i + 1 < n; ++i)
    path.headings[i] = std::atan2(path.waypoints[i + 1].y - path.waypoints[i].y, path.waypoints[i + 1].x - path.waypoints[i].x);
  path.headings[n - 1] = path.headings[n - 2];
  return path;
}

Point2 PathSpec::point_at(double s) const {
  if (s <= 0.0) return waypoints.front();
  if (s >= length()) return waypoints.back();
  const auto it = std::upper_bound(arc.begin(), arc.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - arc.begin()) - 1;
  const double seg = arc[i + 1] - arc[i];
  return lerp(waypoints[i], waypoints[i + 1], (s - arc[i]) / seg);
}

double PathSpec::heading_at(double s) const {
  if (s >= length()) return headings.back();
  if (s <= 0.0) return headings.front();
  const auto it = std::upper_bound(arc.begin(), arc.end(), s);
  return headings[static_cast<std::size_t>(it - arc.begin()) - 1];
}

double PathSpec::project(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    double t = 0.0;
    const double d = segment_distance(p, waypoints[i], waypoints[i + 1], &t);
    if (d < best) {
      best = d;
      best_s = arc[i] + t * (arc[i + 1] - arc[i]);
    }
  }
  return best_s;
}

double PathSpec::distance_to(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    best = std::min(best, segment_distance(p, waypoints[i], waypoints[i + 1]));
  return best;
}

std::vector<Point2> PathSpec::sample(double s0, double len, std::size_t count) const {
  std::vector<Point2> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = point_at(s0 + f * len);
  }
  return out;
}

PathSpec make_s_path(double radius, double straight, double spacing) {
  if (!(radius > 0.0) || !(spacing > 0.0) || straight < 0.0)
    throw Error(Errc::ConfigInvalid, "s-path needs radius > 0, spacing > 0, straight >= 0");
  std::vector<Point2> pts;
  auto line = [&](Point2 a, Point2 b) {
    const auto n = std::max<long>(1, std::lround(distance(a, b) / spacing));
    for (long k = 0; k < n; ++k) pts.push_back(lerp(a, b, static_cast<double>(k) / static_cast<double>(n)));
  };
  const auto arc_steps = std::max<long>(8, std::lround(kPi * radius / spacing));
  line({0.0, 0.0}, {straight, 0.0});
  // Left turn about (straight, R) from -pi/2 to pi/2.
  for (long k = 0; k < arc_steps; ++k) {
    const double phi = -0.5 * kPi + kPi * static_cast<double>(k) / static_cast<double>(arc_steps);
    pts.push_back({straight + radius * std::cos(phi), radius + radius * std::sin(phi)});
  }
  // Right turn about (straight, 3R) from -pi/2 down to -3pi/2.
  for (long k = 0; k < arc_steps; ++k) {
    const double phi = -0.5 * kPi - kPi * static_cast<double>(k) / static_cast<double>(arc_steps);
    pts.push_back({straight + radius * std::cos(phi), 3.0 * radius + radius * std::sin(phi)});
  }
  line({straight, 4.0 * radius}, {2.0 * straight, 4.0 * radius});
  pts.push_back({2.0 * straight, 4.0 * radius});
  return PathSpec::from_waypoints(std::move(pts));
}

// ---------------------------------------------------------------------------
// Primitives

double Primitive::arc_length() const {
  double s = 0.0;
  for (std::size_t i = 1; i < states.size(); ++i)
    s += std::hypot(states[i].x - states[i - 1].x, states[i].y - states[i - 1].y);
  return s;
}

std::size_t PrimitiveLibrary::admissible_count() const {
  return static_cast<std::size_t>(std::count(admissible.begin(), admissible.end(), true));
}

Primitive generate_primitive(Command u, const sim::VehicleParams& teacher, double duration, double dt) {
  Primitive prim;
  prim.command = u;
  prim.duration = duration;
  prim.dt = dt;
  const auto steps = static_cast<long>(std::lround(duration / dt));
  sim::Rng unused(0);
  sim::SimState s;
  prim.states.reserve(static_cast<std::size_t>(steps) + 1);
  prim.states.push_back(s.pose());
  for (long k = 0; k < steps; ++k) {
    s = sim::step_vehicle(s, u, teacher, dt, 0.0, unused);
    prim.states.push_back(s.pose());
  }
  return prim;
}

PrimitiveLibrary build_library(const std::vector<Command>& grid, const transfer::CapabilityHull* hull,
                               const sim::VehicleParams& teacher, double duration, double dt) {
  if (grid.empty()) throw Error(Errc::EmptyAdmissibleSet, "empty primitive grid");
  PrimitiveLibrary lib;
  lib.dt = dt;
  for (const Command& u : grid) {
    lib.primitives.push_back(generate_primitive(u, teacher, duration, dt));
    lib.admissible.push_back(hull == nullptr || hull->contains_strictly(u));
  }
  if (lib.admissible_count() == 0) throw Error(Errc::EmptyAdmissibleSet, "no grid command inside the capability hull");
  return lib;
}

std::vector<Pose> place_primitive(const Primitive& prim, const Pose& at) {
  const double c = std::cos(at.theta);
  const double s = std::sin(at.theta);
  std::vector<Pose> out;
  out.reserve(prim.states.size());
  for (const Pose& p : prim.states)
    out.push_back({at.x + c * p.x - s * p.y, at.y + s * p.x + c * p.y, wrap_angle(at.theta + p.theta)});
  return out;
}

double primitive_cost(std::span<const Point2> segment, double path_heading, std::span<const Pose> placed,
                      const Gains& gains) {
  std::vector<Point2> pts;
  pts.reserve(placed.size());
  for (const Pose& p : placed) pts.push_back({p.x, p.y});
  const double e_d = dtw(segment, pts);
  const double e_theta = std::abs(wrap_angle(path_heading - placed.back().theta));
  return gains.k_d * e_d + gains.k_theta * e_theta;
}

PlanResult plan_step(const Pose& pose, const PathSpec& path, const PrimitiveLibrary& lib, std::size_t horizon,
                     const Gains& gains) {
  if (lib.admissible_count() == 0) throw Error(Errc::EmptyAdmissibleSet, "no admissible primitive");
  PlanResult plan;
  Pose current = pose;
  for (std::size_t step = 0; step < horizon; ++step) {
    const double s0 = path.project({current.x, current.y});
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    std::vector<Pose> best_states;
    for (std::size_t i = 0; i < lib.primitives.size(); ++i) {
      if (!lib.admissible[i]) continue;
      const Primitive& prim = lib.primitives[i];
      auto placed = place_primitive(prim, current);
      const double len = prim.arc_length();
      const auto segment = path.sample(s0, len, prim.states.size());
      const double cost = primitive_cost(segment, path.heading_at(s0 + len), placed, gains);
      if (cost < best) {
        best = cost;
        best_idx = i;
        best_states = std::move(placed);
      }
    }
    plan.chosen.push_back(best_idx);
    plan.costs.push_back(best);
    current = best_states.back();
    plan.world_states.insert(plan.world_states.end(), best_states.begin() + (step == 0 ? 0 : 1), best_states.end());
    plan.segments.push_back(std::move(best_states));
  }
  return plan;
}

double replan_threshold(const Pose& pose, std::span<const Point2> obstacles_in_fov, double eta) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const Point2& o : obstacles_in_fov) nearest = std::min(nearest, distance({pose.x, pose.y}, o));
  return std::isinf(nearest) ? nearest : eta * nearest;
}

double distance_to_polyline(Point2 p, std::span<const Pose> polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return distance(p, {polyline[0].x, polyline[0].y});
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    best = std::min(best, segment_distance(p, {polyline[i].x, polyline[i].y}, {polyline[i + 1].x, polyline[i + 1].y}));
  return best;
}

// ---------------------------------------------------------------------------
// Serialization

std::string library_to_json(const PrimitiveLibrary& lib) {
  nlohmann::json j;
  j["dt"] = lib.dt;
  auto& arr = j["primitives"] = nlohmann::json::array();
  for (std::size_t i = 0; i < lib.primitives.size(); ++i) {
    const Primitive& p = lib.primitives[i];
    nlohmann::json states = nlohmann::json::array();
    for (const Pose& s : p.states) states.push_back({s.x, s.y, s.theta});
    arr.push_back({{"v", p.command.v},
                   {"gamma", p.command.gamma},
                   {"duration", p.duration},
                   {"admissible", static_cast<bool>(lib.admissible[i])},
                   {"states", std::move(states)}});
  }
  return j.dump(2);
}

PrimitiveLibrary library_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PrimitiveLibrary lib;
  lib.dt = j.at("dt").get<double>();
  for (const auto& e : j.at("primitives")) {
    Primitive p;
    p.command = {e.at("v").get<double>(), e.at("gamma").get<double>()};
    p.duration = e.at("duration").get<double>();
    p.dt = lib.dt;
    for (const auto& s : e.at("states")) p.states.push_back({s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()});
    lib.primitives.push_back(std::move(p));
    lib.admissible.push_back(e.at("admissible").get<bool>());
  }
  return lib;
}

}  // namespace scmt::planner
