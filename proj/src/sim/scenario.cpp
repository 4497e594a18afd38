#include "scmt/sim/scenario.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "scmt/calibration/calibration.hpp"
#include "scmt/error.hpp"
#include "scmt/transfer/pairs_io.hpp"

namespace scmt::sim {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw Error(Errc::ConfigInvalid, std::string(field) + " must be positive");
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool collides(const SimState& s, const std::vector<Obstacle>& obstacles) {
  for (const Obstacle& o : obstacles)
    if (std::hypot(s.x - o.x, s.y - o.y) < o.radius) return true;
  return false;
}

struct ActivePlan {
  std::vector<Command> commands;
  std::size_t next = 0;
  std::size_t id = 0;
};

ActivePlan to_active(const planner::PlanResult& plan, const planner::PrimitiveLibrary& lib, std::size_t id) {
  ActivePlan active;
  active.id = id;
  for (std::size_t idx : plan.chosen) {
    const auto& prim = lib.primitives[idx];
    active.commands.insert(active.commands.end(), prim.states.size() - 1, prim.command);
  }
  return active;
}

}  // namespace

Pose blend_estimate(const Pose& previous, Command teacher_command, const Pose& measured, const ScenarioConfig& config) {
  const double k = config.estimator_gain;
  if (k >= 1.0) return measured;
  Rng unused(0);
  const Pose pred = step_vehicle(SimState::from_pose(previous), teacher_command, config.teacher, config.dt, 0.0, unused).pose();
  return {pred.x + k * (measured.x - pred.x), pred.y + k * (measured.y - pred.y),
          wrap_angle(pred.theta + k * wrap_angle(measured.theta - pred.theta))};
}

planner::PathSpec build_path(const PathConfig& config) {
  if (config.type == "s_curve") return planner::make_s_path(config.radius, config.straight, config.spacing);
  if (config.type == "waypoints") return planner::PathSpec::from_waypoints(config.waypoints);
  throw Error(Errc::ConfigInvalid, "path.type must be s_curve or waypoints");
}

void validate_config(const ScenarioConfig& c) {
  require_positive(c.teacher.v_max, "teacher.v_max");
  require_positive(c.teacher.gamma_max, "teacher.gamma_max");
  require_positive(c.learner.v_max, "learner.v_max");
  require_positive(c.learner.gamma_max, "learner.gamma_max");
  if (c.calibration_grid.n_v < 2 || c.calibration_grid.n_gamma < 2)
    throw Error(Errc::ConfigInvalid, "calibration.grid needs at least 2x2 commands");
  require_positive(c.calibration_duration, "calibration.duration");
  if (!(c.calibration_sigma >= 0.0)) throw Error(Errc::ConfigInvalid, "calibration.noise_sigma must be non-negative");
  if (c.primitive_grid.n_v < 1 || c.primitive_grid.n_gamma < 1)
    throw Error(Errc::ConfigInvalid, "primitives.grid must be non-empty");
  require_positive(c.primitive_duration, "primitives.duration");
  require_positive(c.k_d, "planner.k_d");
  require_positive(c.k_theta, "planner.k_theta");
  if (c.horizon < 1) throw Error(Errc::ConfigInvalid, "planner.horizon must be at least 1");
  require_positive(c.eta, "planner.eta");
  require_positive(c.fov_radius, "planner.fov_radius");
  if (!(c.psi >= 0.0)) throw Error(Errc::ConfigInvalid, "transfer.psi must be non-negative");
  if (c.n_vertices < 4 || c.n_vertices > 12) throw Error(Errc::ConfigInvalid, "transfer.n_vertices must be in [4, 12]");
  require_positive(c.dt, "sim.dt");
  if (!(c.noise_sigma >= 0.0)) throw Error(Errc::ConfigInvalid, "sim.noise_sigma must be non-negative");
  require_positive(c.goal_tolerance, "sim.goal_tolerance");
  if (!(c.estimator_gain > 0.0) || c.estimator_gain > 1.0) throw Error(Errc::ConfigInvalid, "sim.estimator_gain must be in (0, 1]");
  if (c.step_budget < 1) throw Error(Errc::ConfigInvalid, "sim.step_budget must be at least 1");
  const double ratio = c.primitive_duration / c.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) throw Error(Errc::ConfigInvalid, "primitives.duration must be a multiple of sim.dt");
  for (const Obstacle& o : c.obstacles) require_positive(o.radius, "environment.obstacles.radius");
  build_path(c.path);
}

std::vector<Point2> obstacles_in_fov(const Pose& pose, const std::vector<Obstacle>& obstacles, double fov_radius) {
  std::vector<Point2> out;
  for (const Obstacle& o : obstacles)
    if (std::hypot(o.x - pose.x, o.y - pose.y) <= fov_radius) out.push_back({o.x, o.y});
  return out;
}

std::vector<transfer::CommandPair> scenario_pairs(const ScenarioConfig& config) {
  if (!config.pairs_file.empty()) return transfer::read_pairs_csv(config.pairs_file);
  SimulatedVehicle probe(config.learner, config.calibration_sigma, config.noise_model, split_seed(config.seed, 0));
  return calibration::build_command_pairs(
      probe, calibration::command_grid(config.calibration_grid.n_v, config.calibration_grid.n_gamma),
      config.calibration_duration, config.dt, config.teacher);
}

SimTrace run_scenario(const ScenarioConfig& config) {
  validate_config(config);
  const planner::PathSpec path = build_path(config.path);
  const Pose start{path.waypoints.front().x, path.waypoints.front().y, path.headings.front()};

  transfer::CommandMapper mapper(transfer::build_capability_hull(scenario_pairs(config)), {config.psi, config.n_vertices});

  const auto grid = calibration::command_grid(config.primitive_grid.n_v, config.primitive_grid.n_gamma);
  const planner::PrimitiveLibrary lib = planner::build_library(grid, config.baseline ? nullptr : &mapper.hull(),
                                                               config.teacher, config.primitive_duration, config.dt);
  const planner::Gains gains{config.k_d, config.k_theta};

  SimulatedVehicle vehicle(config.learner, config.noise_sigma, config.noise_model, split_seed(config.seed, 1));
  Pose measured = vehicle.reset(start);
  Pose estimate = measured;

  SimTrace trace;
  std::map<std::pair<double, double>, Command> mapped;
  auto replan = [&](const Pose& from) {
    const auto plan = planner::plan_step(from, path, lib, config.horizon, gains);
    trace.plans.push_back(plan.world_states);
    return to_active(plan, lib, trace.plans.size() - 1);
  };
  ActivePlan active = replan(estimate);

  for (std::size_t step = 0; step < config.step_budget; ++step) {
    if (active.next >= active.commands.size()) active = replan(estimate);
    const Command teacher_cmd = active.commands[active.next++];
    Command learner_cmd = teacher_cmd;
    if (!config.baseline) {
      const auto key = std::make_pair(teacher_cmd.v, teacher_cmd.gamma);
      auto it = mapped.find(key);
      if (it == mapped.end()) it = mapped.emplace(key, mapper.map(teacher_cmd)).first;
      learner_cmd = it->second;
    }
    measured = vehicle.step(learner_cmd, config.dt);
    estimate = blend_estimate(estimate, teacher_cmd, measured, config);

    TraceRecord rec;
    rec.step = step;
    rec.state = vehicle.true_state();
    rec.t = rec.state.t;
    rec.teacher_command = teacher_cmd;
    rec.learner_command = learner_cmd;
    rec.measured = measured;
    rec.estimate = estimate;
    rec.plan_id = active.id;
    rec.deviation = planner::distance_to_polyline({estimate.x, estimate.y}, trace.plans[active.id]);
    rec.epsilon = planner::replan_threshold(estimate, obstacles_in_fov(estimate, config.obstacles, config.fov_radius), config.eta);
    rec.replan = planner::should_replan(rec.deviation, rec.epsilon);
    trace.records.push_back(rec);

    if (collides(rec.state, config.obstacles)) {
      trace.collision = true;
      trace.failure = "collision at step " + std::to_string(step);
      return trace;
    }
    if (distance({rec.state.x, rec.state.y}, path.goal) < config.goal_tolerance) {
      trace.success = true;
      return trace;
    }
    if (rec.replan) active = replan(estimate);
  }
  trace.failure = "step budget exhausted";
  return trace;
}

void require_success(const SimTrace& trace) {
  if (!trace.success) throw Error(Errc::MissionFailed, trace.failure.empty() ? "mission failed" : trace.failure);
}

TraceMetrics trace_metrics(const SimTrace& trace, const planner::PathSpec& path) {
  TraceMetrics m;
  m.steps = trace.records.size();
  m.success = trace.success;
  if (trace.records.empty()) return m;
  double sum = 0.0;
  for (const TraceRecord& r : trace.records) {
    const double d = path.distance_to({r.state.x, r.state.y});
    m.max_path_deviation = std::max(m.max_path_deviation, d);
    sum += d;
    if (r.plan_id < trace.plans.size())
      m.max_plan_deviation = std::max(m.max_plan_deviation, planner::distance_to_polyline({r.state.x, r.state.y}, trace.plans[r.plan_id]));
    if (r.replan) ++m.replan_count;
  }
  m.mean_path_deviation = sum / static_cast<double>(trace.records.size());
  return m;
}

}  // namespace scmt::sim
