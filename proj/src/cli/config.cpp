#include "scmt/cli/config.hpp"

#include <cmath>
#include <regex>
#include <set>

#include <json.hpp>

#include "scmt/error.hpp"

namespace scmt::cli {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(Errc::ValidationError, field + ": " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) invalid(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
}

double angle_expr(const std::string& s, const std::string& field) {
  static const std::regex re(R"(\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) invalid(field, "expected a number or an expression like 2*pi/3");
  double value = kPi;
  try {
    if (m[1].matched) value *= std::stod(m[1].str());
    if (m[2].matched) value /= std::stod(m[2].str());
  } catch (const std::exception&) {
    invalid(field, "bad number in '" + s + "'");
  }
  return value;
}

void read_double(const json& j, const char* key, const std::string& field, double& out, bool allow_angle = false) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (v.is_number()) out = v.get<double>();
  else if (allow_angle && v.is_string()) out = angle_expr(v.get<std::string>(), field);
  else invalid(field, "expected a number");
}

void read_size(const json& j, const char* key, const std::string& field, std::size_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) invalid(field, "expected a non-negative integer");
  out = v.get<std::size_t>();
}

void read_string(const json& j, const char* key, const std::string& field, std::string& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_string()) invalid(field, "expected a string");
  out = j.at(key).get<std::string>();
}

void read_vehicle(const json& j, const char* key, sim::VehicleParams& out) {
  if (!j.contains(key)) return;
  const std::string w = key;
  check_keys(j.at(key), w, {"v_max", "gamma_max"});
  read_double(j.at(key), "v_max", w + ".v_max", out.v_max);
  read_double(j.at(key), "gamma_max", w + ".gamma_max", out.gamma_max, true);
}

void read_grid(const json& j, const std::string& field, sim::GridSpec& out) {
  if (!j.contains("grid")) return;
  const json& g = j.at("grid");
  if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer() || g[0].get<long long>() < 1 ||
      g[1].get<long long>() < 1)
    invalid(field, "expected [n_v, n_gamma] with positive integers");
  out = {g[0].get<std::size_t>(), g[1].get<std::size_t>()};
}

}  // namespace

sim::ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  sim::ScenarioConfig c;
  check_keys(root, "", {"teacher", "learner", "calibration", "primitives", "planner", "transfer", "sim", "environment", "output_dir"});
  read_vehicle(root, "teacher", c.teacher);
  read_vehicle(root, "learner", c.learner);
  if (root.contains("calibration")) {
    const json& j = root.at("calibration");
    check_keys(j, "calibration", {"grid", "duration", "noise_sigma", "pairs_file"});
    read_grid(j, "calibration.grid", c.calibration_grid);
    read_double(j, "duration", "calibration.duration", c.calibration_duration);
    read_double(j, "noise_sigma", "calibration.noise_sigma", c.calibration_sigma);
    read_string(j, "pairs_file", "calibration.pairs_file", c.pairs_file);
  }
  if (root.contains("primitives")) {
    const json& j = root.at("primitives");
    check_keys(j, "primitives", {"grid", "duration"});
    read_grid(j, "primitives.grid", c.primitive_grid);
    read_double(j, "duration", "primitives.duration", c.primitive_duration);
  }
  if (root.contains("planner")) {
    const json& j = root.at("planner");
    check_keys(j, "planner", {"k_d", "k_theta", "horizon", "eta", "fov_radius"});
    read_double(j, "k_d", "planner.k_d", c.k_d);
    read_double(j, "k_theta", "planner.k_theta", c.k_theta);
    read_size(j, "horizon", "planner.horizon", c.horizon);
    read_double(j, "eta", "planner.eta", c.eta);
    read_double(j, "fov_radius", "planner.fov_radius", c.fov_radius);
  }
  if (root.contains("transfer")) {
    const json& j = root.at("transfer");
    check_keys(j, "transfer", {"psi", "n_vertices"});
    read_double(j, "psi", "transfer.psi", c.psi);
    read_size(j, "n_vertices", "transfer.n_vertices", c.n_vertices);
  }
  if (root.contains("sim")) {
    const json& j = root.at("sim");
    check_keys(j, "sim", {"dt", "noise_sigma", "noise_model", "seed", "estimator_gain", "goal_tolerance", "step_budget"});
    read_double(j, "dt", "sim.dt", c.dt);
    read_double(j, "noise_sigma", "sim.noise_sigma", c.noise_sigma);
    std::string model = c.noise_model == sim::NoiseModel::Measurement ? "measurement" : "process";
    read_string(j, "noise_model", "sim.noise_model", model);
    if (model == "measurement") c.noise_model = sim::NoiseModel::Measurement;
    else if (model == "process") c.noise_model = sim::NoiseModel::Process;
    else invalid("sim.noise_model", "expected measurement or process");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) invalid("sim.seed", "expected a non-negative integer");
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    read_double(j, "estimator_gain", "sim.estimator_gain", c.estimator_gain);
    read_double(j, "goal_tolerance", "sim.goal_tolerance", c.goal_tolerance);
    read_size(j, "step_budget", "sim.step_budget", c.step_budget);
  }
  if (root.contains("environment")) {
    const json& env = root.at("environment");
    check_keys(env, "environment", {"path", "obstacles"});
    if (env.contains("path")) {
      const json& p = env.at("path");
      check_keys(p, "environment.path", {"type", "radius", "straight", "spacing", "waypoints"});
      read_string(p, "type", "environment.path.type", c.path.type);
      read_double(p, "radius", "environment.path.radius", c.path.radius);
      read_double(p, "straight", "environment.path.straight", c.path.straight);
      read_double(p, "spacing", "environment.path.spacing", c.path.spacing);
      if (p.contains("waypoints")) {
        c.path.waypoints.clear();
        for (const json& w : p.at("waypoints")) {
          if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            invalid("environment.path.waypoints", "expected [x, y] pairs");
          c.path.waypoints.push_back({w[0].get<double>(), w[1].get<double>()});
        }
      }
    }
    if (env.contains("obstacles")) {
      if (!env.at("obstacles").is_array()) invalid("environment.obstacles", "expected an array");
      for (const json& o : env.at("obstacles")) {
        check_keys(o, "environment.obstacles", {"x", "y", "radius"});
        sim::Obstacle ob;
        read_double(o, "x", "environment.obstacles.x", ob.x);
        read_double(o, "y", "environment.obstacles.y", ob.y);
        read_double(o, "radius", "environment.obstacles.radius", ob.radius);
        c.obstacles.push_back(ob);
      }
    }
  }
  read_string(root, "output_dir", "output_dir", c.output_dir);

  try {
    sim::validate_config(c);
  } catch (const Error& e) {
    if (e.code() != Errc::ConfigInvalid) throw;
    std::string msg = e.what();
    const std::string prefix = std::string(errc_name(Errc::ConfigInvalid)) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    throw Error(Errc::ValidationError, msg);
  }
  return c;
}

std::string emit_config(const sim::ScenarioConfig& c) {
  json j;
  j["teacher"] = {{"v_max", c.teacher.v_max}, {"gamma_max", c.teacher.gamma_max}};
  j["learner"] = {{"v_max", c.learner.v_max}, {"gamma_max", c.learner.gamma_max}};
  j["calibration"] = {{"grid", {c.calibration_grid.n_v, c.calibration_grid.n_gamma}},
                      {"duration", c.calibration_duration},
                      {"noise_sigma", c.calibration_sigma},
                      {"pairs_file", c.pairs_file}};
  j["primitives"] = {{"grid", {c.primitive_grid.n_v, c.primitive_grid.n_gamma}}, {"duration", c.primitive_duration}};
  j["planner"] = {{"k_d", c.k_d}, {"k_theta", c.k_theta}, {"horizon", c.horizon}, {"eta", c.eta}, {"fov_radius", c.fov_radius}};
  j["transfer"] = {{"psi", c.psi}, {"n_vertices", c.n_vertices}};
  j["sim"] = {{"dt", c.dt},
              {"noise_sigma", c.noise_sigma},
              {"noise_model", c.noise_model == sim::NoiseModel::Measurement ? "measurement" : "process"},
              {"seed", c.seed},
              {"estimator_gain", c.estimator_gain},
              {"goal_tolerance", c.goal_tolerance},
              {"step_budget", c.step_budget}};
  json waypoints = json::array();
  for (const Point2& p : c.path.waypoints) waypoints.push_back({p.x, p.y});
  json obstacles = json::array();
  for (const sim::Obstacle& o : c.obstacles) obstacles.push_back({{"x", o.x}, {"y", o.y}, {"radius", o.radius}});
  j["environment"] = {{"path",
                       {{"type", c.path.type},
                        {"radius", c.path.radius},
                        {"straight", c.path.straight},
                        {"spacing", c.path.spacing},
                        {"waypoints", waypoints}}},
                      {"obstacles", obstacles}};
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

}  // namespace scmt::cli
