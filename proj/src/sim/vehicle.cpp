#include "scmt/sim/vehicle.hpp"

#include <cmath>

namespace scmt::sim {

SimState step_vehicle(const SimState& s, Command u, const VehicleParams& p, double dt, double noise_sigma, Rng& rng) {
  const double speed = u.v * p.v_max;
  SimState next;
  next.x = s.x + speed * std::cos(s.theta) * dt;
  next.y = s.y + speed * std::sin(s.theta) * dt;
  next.theta = wrap_angle(s.theta + u.gamma * p.gamma_max * dt);
  next.t = s.t + dt;
  if (noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sigma);
    next.x += noise(rng);
    next.y += noise(rng);
  }
  return next;
}

Pose add_position_noise(const Pose& pose, double noise_sigma, Rng& rng) {
  if (noise_sigma <= 0.0) return pose;
  std::normal_distribution<double> noise(0.0, noise_sigma);
  Pose out = pose;
  out.x += noise(rng);
  out.y += noise(rng);
  return out;
}

Pose SimulatedVehicle::observe() {
  return model_ == NoiseModel::Measurement ? add_position_noise(state_.pose(), sigma_, rng_) : state_.pose();
}

Pose SimulatedVehicle::reset(const Pose& pose) {
  state_ = SimState::from_pose(pose);
  return observe();
}

Pose SimulatedVehicle::step(Command u, double dt) {
  const double process_sigma = model_ == NoiseModel::Process ? sigma_ : 0.0;
  state_ = step_vehicle(state_, u, params_, dt, process_sigma, rng_);
  return observe();
}

}  // namespace scmt::sim
