#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scmt/planner/planner.hpp"
#include "scmt/sim/vehicle.hpp"
#include "scmt/transfer/transfer.hpp"

namespace scmt::sim {

struct Obstacle {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

struct PathConfig {
  /// "s_curve" or "waypoints".
  std::string type = "s_curve";
  double radius = 3.0;
  double straight = 1.0;
  double spacing = 0.05;
  std::vector<Point2> waypoints;

  friend bool operator==(const PathConfig&, const PathConfig&) = default;
};

struct Environment {
  std::vector<Obstacle> obstacles;
  double fov_radius = 3.0;
  planner::PathSpec path;
};

struct GridSpec {
  std::size_t n_v = 5;
  std::size_t n_gamma = 5;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Everything a closed-loop run needs. Defaults follow the degraded-learner
/// reference case; see configs/ref_s_path.json.
struct ScenarioConfig {
  VehicleParams teacher{3.0, kPi / 3.0};
  VehicleParams learner{1.0, kPi / 8.0};

  GridSpec calibration_grid{5, 5};
  double calibration_duration = 1.0;
  /// Position noise during probing; the run itself uses noise_sigma.
  double calibration_sigma = 0.0;
  /// CSV of command pairs; empty means calibrate against the learner.
  std::string pairs_file;

  GridSpec primitive_grid{11, 11};
  double primitive_duration = 1.0;

  double k_d = 1.0;
  double k_theta = 0.5;
  std::size_t horizon = 2;
  double eta = 0.5;
  double fov_radius = 3.0;

  double psi = 0.02;
  std::size_t n_vertices = 4;

  double dt = 0.05;
  double noise_sigma = 0.1;
  NoiseModel noise_model = NoiseModel::Measurement;
  std::uint64_t seed = 0;
  /// Weight of each new measurement in the pose estimate the planner and
  /// monitor use; 1 plans straight from raw measurements.
  double estimator_gain = 1.0;
  double goal_tolerance = 0.2;
  std::size_t step_budget = 10000;

  PathConfig path;
  std::vector<Obstacle> obstacles;
  std::string output_dir = "out";

  /// Feed teacher commands to the learner unmapped, with the unfiltered library.
  bool baseline = false;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct TraceRecord {
  std::size_t step = 0;
  double t = 0.0;
  Command teacher_command;
  Command learner_command;
  SimState state;
  Pose measured;
  /// Pose the planner and monitor acted on.
  Pose estimate;
  std::size_t plan_id = 0;
  double deviation = 0.0;
  double epsilon = 0.0;
  bool replan = false;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  /// Planned world polylines indexed by plan_id.
  std::vector<std::vector<Pose>> plans;
  bool success = false;
  bool collision = false;
  std::string failure;
};

struct TraceMetrics {
  double max_path_deviation = 0.0;
  double mean_path_deviation = 0.0;
  double max_plan_deviation = 0.0;
  std::size_t replan_count = 0;
  std::size_t steps = 0;
  bool success = false;
};

planner::PathSpec build_path(const PathConfig& config);

/// Throws Error{ConfigInvalid} naming the offending field.
void validate_config(const ScenarioConfig& config);

/// Centres of obstacles within fov_radius of the pose.
std::vector<Point2> obstacles_in_fov(const Pose& pose, const std::vector<Obstacle>& obstacles, double fov_radius);

/// One step of the pose estimate: teacher-model prediction under the
/// teacher command just issued, pulled toward the measurement by
/// config.estimator_gain.
Pose blend_estimate(const Pose& previous, Command teacher_command, const Pose& measured, const ScenarioConfig& config);

/// Loads config.pairs_file, or calibrates against a simulated learner on
/// the seed's calibration stream.
std::vector<transfer::CommandPair> scenario_pairs(const ScenarioConfig& config);

/// Closed loop: calibrate (or load pairs), build the library, then repeat
/// plan -> map -> execute -> monitor until the goal, a collision or the step
/// budget. Failures are reported in the returned trace (success = false);
/// see require_success.
SimTrace run_scenario(const ScenarioConfig& config);

/// Throws Error{MissionFailed} when the trace did not reach the goal.
void require_success(const SimTrace& trace);

TraceMetrics trace_metrics(const SimTrace& trace, const planner::PathSpec& path);

}  // namespace scmt::sim
