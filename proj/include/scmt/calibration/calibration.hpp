#pragma once

#include <cstddef>
#include <vector>

#include "scmt/sim/vehicle.hpp"
#include "scmt/transfer/hull.hpp"

namespace scmt::calibration {

/// Learner command held for `duration`, with the poses observed around it.
struct MotionObservation {
  Command command;
  Pose start_pose;
  Pose end_pose;
  double duration = 0.0;
};

struct Retrieval {
  Command command;
  /// Set when the raw estimate left the command box and was clamped.
  bool clamped = false;
};

/// Evenly spaced grid over v in [0, 1] (n_v points) x gamma in [-1, 1] (n_gamma points).
std::vector<Command> command_grid(std::size_t n_v, std::size_t n_gamma);

/// Runs every grid command from the canonical pose (0, 0, 0) for `duration`
/// in steps of dt. Throws Error{BlackBoxFault} on a non-finite pose.
std::vector<MotionObservation> probe_learner(sim::BlackBox& black_box, const std::vector<Command>& grid,
                                             double duration, double dt);

/// Teacher command that reproduces the observed heading change and chord
/// under constant input. With dt > 0 the teacher is the forward-Euler model
/// stepped at dt (the chord of a regular polygon path); dt = 0 uses the
/// continuous arc s = c (dtheta/2) / sin(dtheta/2).
/// Throws Error{InconsistentMotion} when the implied v exceeds 1.05.
Retrieval retrieve_teacher_equivalent(const MotionObservation& obs, const sim::VehicleParams& teacher, double dt);

/// probe + retrieve; clamped retrievals are dropped.
std::vector<transfer::CommandPair> build_command_pairs(sim::BlackBox& black_box, const std::vector<Command>& grid,
                                                       double duration, double dt,
                                                       const sim::VehicleParams& teacher);

}  // namespace scmt::calibration
