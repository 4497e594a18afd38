#include "scmt/calibration/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "scmt/error.hpp"

namespace scmt::calibration {

namespace {

bool finite(const Pose& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.theta); }

constexpr double kClampSlack = 1e-9;

}  // namespace

std::vector<Command> command_grid(std::size_t n_v, std::size_t n_gamma) {
  std::vector<Command> grid;
  grid.reserve(n_v * n_gamma);
  for (std::size_t i = 0; i < n_v; ++i) {
    const double v = n_v == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n_v - 1);
    for (std::size_t j = 0; j < n_gamma; ++j) {
      const double g = n_gamma == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n_gamma - 1);
      grid.push_back({v, g});
    }
  }
  return grid;
}

std::vector<MotionObservation> probe_learner(sim::BlackBox& black_box, const std::vector<Command>& grid,
                                             double duration, double dt) {
  const auto steps = static_cast<long>(std::lround(duration / dt));
  std::vector<MotionObservation> out;
  out.reserve(grid.size());
  for (const Command& u : grid) {
    MotionObservation obs;
    obs.command = u;
    obs.duration = duration;
    obs.start_pose = black_box.reset({0.0, 0.0, 0.0});
    Pose pose = obs.start_pose;
    for (long k = 0; k < steps; ++k) pose = black_box.step(u, dt);
    if (!finite(obs.start_pose) || !finite(pose)) throw Error(Errc::BlackBoxFault, "non-finite learner state");
    obs.end_pose = pose;
    out.push_back(obs);
  }
  return out;
}

Retrieval retrieve_teacher_equivalent(const MotionObservation& obs, const sim::VehicleParams& teacher, double dt) {
  const double T = obs.duration;
  const double dtheta = wrap_angle(obs.end_pose.theta - obs.start_pose.theta);
  const double chord = std::hypot(obs.end_pose.x - obs.start_pose.x, obs.end_pose.y - obs.start_pose.y);

  double gamma = dtheta / (teacher.gamma_max * T);
  double v;
  if (dt > 0.0) {
    // n equal Euler steps of length l turning by dtheta/n each trace a
    // regular polygon: chord = l sin(dtheta/2) / sin(dtheta/(2n)).
    const double n = std::round(T / dt);
    const double half = 0.5 * dtheta;
    const double step_len = std::abs(half) < 1e-12 ? chord / n : chord * std::sin(half / n) / std::sin(half);
    v = step_len / (teacher.v_max * (T / n));
  } else {
    const double half = 0.5 * dtheta;
    const double arc = std::abs(half) < 1e-12 ? chord : chord * half / std::sin(half);
    v = arc / (teacher.v_max * T);
  }
  if (v > 1.05) throw Error(Errc::InconsistentMotion, "observed motion exceeds the teacher's capability");

  Retrieval r;
  r.clamped = v > 1.0 + kClampSlack || v < -kClampSlack || std::abs(gamma) > 1.0 + kClampSlack;
  v = std::clamp(v, 0.0, 1.0);
  gamma = std::clamp(gamma, -1.0, 1.0);
  r.command = {v, gamma};
  return r;
}

std::vector<transfer::CommandPair> build_command_pairs(sim::BlackBox& black_box, const std::vector<Command>& grid,
                                                       double duration, double dt,
                                                       const sim::VehicleParams& teacher) {
  std::vector<transfer::CommandPair> pairs;
  for (const auto& obs : probe_learner(black_box, grid, duration, dt)) {
    const Retrieval r = retrieve_teacher_equivalent(obs, teacher, dt);
    if (r.clamped) continue;
    pairs.push_back({r.command, obs.command});
  }
  return pairs;
}

}  // namespace scmt::calibration
