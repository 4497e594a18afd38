#pragma once

#include <cstdint>
#include <random>

#include "scmt/types.hpp"

namespace scmt::sim {

/// Capability limits of the unicycle/bicycle kinematic model.
struct VehicleParams {
  double v_max = 1.0;      // m/s at v = 1
  double gamma_max = 1.0;  // rad/s at gamma = 1

  friend bool operator==(const VehicleParams&, const VehicleParams&) = default;
};

struct SimState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double t = 0.0;

  Pose pose() const { return {x, y, theta}; }
  static SimState from_pose(const Pose& p, double t = 0.0) { return {p.x, p.y, p.theta, t}; }
};

using Rng = std::mt19937_64;

/// One forward-Euler step of
///   x' = v v_max cos(theta), y' = v v_max sin(theta), theta' = gamma gamma_max
/// followed by additive N(0, sigma^2) noise on x and y. The rng is only
/// drawn from when sigma > 0.
SimState step_vehicle(const SimState& state, Command u, const VehicleParams& params, double dt, double noise_sigma,
                      Rng& rng);

/// Pose with N(0, sigma^2) added to x and y.
Pose add_position_noise(const Pose& pose, double noise_sigma, Rng& rng);

enum class NoiseModel {
  /// Noise corrupts the reported position only; the true state is clean.
  Measurement,
  /// Noise enters the state at every step.
  Process,
};

/// Input/output access to a vehicle whose dynamics are unknown to the caller.
class BlackBox {
 public:
  virtual ~BlackBox() = default;
  /// Places the vehicle at `pose` and returns the observed pose.
  virtual Pose reset(const Pose& pose) = 0;
  /// Holds `u` for dt and returns the observed pose.
  virtual Pose step(Command u, double dt) = 0;
};

/// Simulated vehicle used as the learner (or as a stand-in teacher).
class SimulatedVehicle final : public BlackBox {
 public:
  SimulatedVehicle(VehicleParams params, double noise_sigma, NoiseModel model, std::uint64_t seed)
      : params_(params), sigma_(noise_sigma), model_(model), rng_(seed) {}

  Pose reset(const Pose& pose) override;
  Pose step(Command u, double dt) override;

  const SimState& true_state() const { return state_; }
  const VehicleParams& params() const { return params_; }

 private:
  Pose observe();

  VehicleParams params_;
  double sigma_;
  NoiseModel model_;
  Rng rng_;
  SimState state_;
};

}  // namespace scmt::sim
