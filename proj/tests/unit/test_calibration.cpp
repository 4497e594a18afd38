#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "scmt/calibration/calibration.hpp"
#include "scmt/error.hpp"

using namespace scmt;
using namespace scmt::calibration;

namespace {

const sim::VehicleParams kTeacher{3.0, kPi / 3.0};
const sim::VehicleParams kLearner{1.0, kPi / 8.0};
constexpr double kDt = 0.05;

class FaultyBox final : public sim::BlackBox {
 public:
  Pose reset(const Pose& p) override { return p; }
  Pose step(Command, double) override { return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}; }
};

MotionObservation observe(Pose end, double duration = 1.0) { return {{0.0, 0.0}, {0.0, 0.0, 0.0}, end, duration}; }

}  // namespace

TEST_CASE("command grid spans the command box") {
  const auto g = command_grid(5, 5);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == Command{0.0, -1.0});
  CHECK(g.back() == Command{1.0, 1.0});
  CHECK(g[12] == Command{0.5, 0.0});
}

TEST_CASE("probe examples on the degraded learner") {
  sim::SimulatedVehicle learner(kLearner, 0.0, sim::NoiseModel::Measurement, 1);
  const auto obs = probe_learner(learner, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}, 1.0, kDt);
  REQUIRE(obs.size() == 3);
  CHECK(obs[0].end_pose.x == 0.0);
  CHECK(obs[0].end_pose.y == 0.0);
  CHECK(obs[1].end_pose.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(obs[1].end_pose.y == doctest::Approx(0.0));
  CHECK(obs[2].end_pose.theta == doctest::Approx(kPi / 8.0).epsilon(1e-12));
}

TEST_CASE("retrieval examples") {
  Retrieval r = retrieve_teacher_equivalent(observe({1.0, 0.0, 0.0}), kTeacher, kDt);
  CHECK(r.command.v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r.command.gamma == 0.0);
  CHECK_FALSE(r.clamped);

  r = retrieve_teacher_equivalent(observe({0.0, 0.0, 0.0}), kTeacher, kDt);
  CHECK(r.command == Command{0.0, 0.0});

  r = retrieve_teacher_equivalent(observe({0.0, 0.0, kPi / 8.0}), kTeacher, kDt);
  CHECK(r.command.gamma == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("continuous-arc retrieval") {
  // Quarter circle of radius 1: chord sqrt(2), arc pi/2.
  const auto r = retrieve_teacher_equivalent(observe({1.0, 1.0, kPi / 2.0}), {2.0, kPi}, 0.0);
  CHECK(r.command.v == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(r.command.gamma == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("small-angle limit is chord over v_max T") {
  for (double dt : {0.0, kDt}) {
    const auto r = retrieve_teacher_equivalent(observe({1.2, 0.0, 0.0}, 2.0), kTeacher, dt);
    CHECK(r.command.v == doctest::Approx(1.2 / (3.0 * 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("larger chord never yields smaller v") {
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double c = 0.1 * i;
    const auto r = retrieve_teacher_equivalent(observe({c * std::cos(0.2), c * std::sin(0.2), 0.4}), kTeacher, kDt);
    CHECK(r.command.v >= prev);
    prev = r.command.v;
  }
}

TEST_CASE("teacher round trip is exact") {
  sim::SimulatedVehicle teacher(kTeacher, 0.0, sim::NoiseModel::Measurement, 1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> v(0.0, 1.0), g(-1.0, 1.0);
  std::vector<Command> cmds;
  for (int i = 0; i < 50; ++i) cmds.push_back({v(rng), g(rng)});
  const auto obs = probe_learner(teacher, cmds, 1.0, kDt);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const auto r = retrieve_teacher_equivalent(obs[i], kTeacher, kDt);
    CHECK(std::abs(r.command.v - cmds[i].v) < 1e-9);
    CHECK(std::abs(r.command.gamma - cmds[i].gamma) < 1e-9);
  }
}

TEST_CASE("identity learner pairs with itself") {
  sim::SimulatedVehicle same(kTeacher, 0.0, sim::NoiseModel::Measurement, 1);
  for (const auto& p : build_command_pairs(same, command_grid(5, 5), 1.0, kDt, kTeacher)) {
    CHECK(std::abs(p.teacher.v - p.learner.v) < 1e-9);
    CHECK(std::abs(p.teacher.gamma - p.learner.gamma) < 1e-9);
  }
}

TEST_CASE("degraded learner pairs follow the affine degradation") {
  sim::SimulatedVehicle learner(kLearner, 0.0, sim::NoiseModel::Measurement, 1);
  const auto pairs = build_command_pairs(learner, command_grid(5, 5), 1.0, kDt, kTeacher);
  REQUIRE(pairs.size() == 25);
  for (const auto& p : pairs) {
    CHECK(std::abs(p.teacher.v - p.learner.v / 3.0) < 1e-6);
    CHECK(std::abs(p.teacher.gamma - 3.0 / 8.0 * p.learner.gamma) < 1e-6);
  }
}

TEST_CASE("noisy retrieval stays close on average") {
  const auto grid = command_grid(5, 5);
  double total = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    sim::SimulatedVehicle learner(kLearner, 0.1, sim::NoiseModel::Measurement, seed);
    for (const auto& obs : probe_learner(learner, grid, 1.0, kDt)) {
      const auto r = retrieve_teacher_equivalent(obs, kTeacher, kDt);
      total += std::abs(r.command.v - obs.command.v / 3.0) + std::abs(r.command.gamma - 3.0 / 8.0 * obs.command.gamma);
      ++count;
    }
  }
  CHECK(total / count < 0.15);
}

TEST_CASE("motion beyond the teacher is inconsistent") {
  try {
    retrieve_teacher_equivalent(observe({4.0, 0.0, 0.0}), kTeacher, kDt);
    FAIL("expected InconsistentMotion");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InconsistentMotion);
  }
  const auto r = retrieve_teacher_equivalent(observe({3.1, 0.0, 0.0}), kTeacher, kDt);
  CHECK(r.clamped);
  CHECK(r.command.v == 1.0);
}

TEST_CASE("non-finite learner state is a fault") {
  FaultyBox box;
  try {
    probe_learner(box, {{0.5, 0.0}}, 1.0, kDt);
    FAIL("expected BlackBoxFault");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BlackBoxFault);
  }
}
