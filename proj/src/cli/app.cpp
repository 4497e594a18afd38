#include "scmt/cli/app.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scmt/calibration/calibration.hpp"
#include "scmt/cli/config.hpp"
#include "scmt/error.hpp"
#include "scmt/scm/rectangle_map.hpp"
#include "scmt/sim/scenario.hpp"
#include "scmt/sim/trace_io.hpp"
#include "scmt/transfer/pairs_io.hpp"
#include "scmt/transfer/transfer.hpp"

namespace scmt::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_numbers(const std::string& text, char sep, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(Errc::ValidationError, what + ": bad number '" + cell + "'");
    }
  }
  return out;
}

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

sim::ScenarioConfig load_config(const Common& common) {
  sim::ScenarioConfig config;
  if (!common.config_path.empty()) {
    config = parse_config(sim::read_text(common.config_path));
    if (!config.pairs_file.empty() && fs::path(config.pairs_file).is_relative())
      config.pairs_file = (fs::path(common.config_path).parent_path() / config.pairs_file).string();
  }
  if (common.seed) config.seed = *common.seed;
  if (!common.out_dir.empty()) config.output_dir = common.out_dir;
  return config;
}

fs::path ensure_out(const sim::ScenarioConfig& config) {
  fs::path dir(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

void add_common(CLI::App* app, Common& common) {
  app->add_option("--config", common.config_path, "Scenario JSON")->check(CLI::ExistingFile);
  app->add_option("--seed", common.seed, "Override the configured seed");
  app->add_option("--out", common.out_dir, "Output directory");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarz-Christoffel command transfer between teacher and learner vehicles", "scmt"};
  app.require_subcommand(1);

  Common common;

  auto* scm = app.add_subcommand("scm", "Conformal map utilities");
  scm->require_subcommand(1);
  auto* solve = scm->add_subcommand("solve", "Solve the rectangle map of a polygon");
  std::string polygon_text;
  std::string corners_text = "0,1,2,3";
  solve->add_option("--polygon", polygon_text, "Counterclockwise vertices 'x,y;x,y;...'")->required();
  solve->add_option("--corners", corners_text, "Indices of the four corner vertices");

  auto* calibrate = app.add_subcommand("calibrate", "Probe the learner and write pairs.csv");
  add_common(calibrate, common);
  std::string grid_text;
  std::optional<double> duration;
  calibrate->add_option("--grid", grid_text, "Probe grid as NxM");
  calibrate->add_option("--duration", duration, "Probe duration in seconds");

  auto* transfer_cmd = app.add_subcommand("transfer", "Command transfer");
  transfer_cmd->require_subcommand(1);
  auto* map_cmd = transfer_cmd->add_subcommand("map", "Map one teacher command to the learner");
  std::string pairs_path;
  std::string command_text;
  double psi = transfer::TransferOptions{}.psi;
  std::size_t n_vertices = 4;
  map_cmd->add_option("--pairs", pairs_path, "Pairs CSV (vT,gammaT,vL,gammaL)")->required()->check(CLI::ExistingFile);
  map_cmd->add_option("--command", command_text, "Teacher command 'v,gamma'")->required();
  map_cmd->add_option("--psi", psi, "Shortcut radius");
  map_cmd->add_option("--vertices", n_vertices, "Polygon vertex count");

  auto* build = app.add_subcommand("build-primitives", "Write the primitive library as JSON");
  add_common(build, common);
  bool unfiltered = false;
  build->add_flag("--baseline", unfiltered, "Keep every grid primitive admissible");

  auto* plan = app.add_subcommand("plan", "Plan from a pose and print the chosen primitives");
  add_common(plan, common);
  std::string pose_text;
  plan->add_option("--pose", pose_text, "Start pose 'x,y,theta' (default: path start)");

  auto* simulate = app.add_subcommand("simulate", "Run the closed-loop scenario");
  add_common(simulate, common);
  bool baseline = false;
  simulate->add_flag("--baseline", baseline, "Feed teacher commands to the learner unmapped");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (solve->parsed()) {
      std::vector<Complex> vertices;
      std::stringstream ss(polygon_text);
      std::string item;
      while (std::getline(ss, item, ';')) {
        const auto xy = parse_numbers(item, ',', "--polygon");
        if (xy.size() != 2) throw Error(Errc::ValidationError, "--polygon: expected x,y per vertex");
        vertices.emplace_back(xy[0], xy[1]);
      }
      const auto c = parse_numbers(corners_text, ',', "--corners");
      if (c.size() != 4) throw Error(Errc::ValidationError, "--corners: expected four indices");
      std::array<std::size_t, 4> corners{};
      for (int k = 0; k < 4; ++k) corners[k] = static_cast<std::size_t>(c[k]);
      scm::SolveReport report;
      const auto map = scm::RectangleMap::build(scm::validate_polygon(vertices, corners), &report);
      nlohmann::json j;
      j["aspect"] = map.aspect();
      j["modulus_m"] = map.modulus_m();
      j["strip_length"] = map.strip().L;
      j["iterations"] = report.iterations;
      j["side_residual"] = report.side_residual;
      auto& pv = j["prevertices"] = nlohmann::json::array();
      for (const auto& p : map.strip().prevertices) pv.push_back({p.x, p.top ? 1 : 0});
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (map_cmd->parsed()) {
      const auto v = parse_numbers(command_text, ',', "--command");
      if (v.size() != 2) throw Error(Errc::ValidationError, "--command: expected v,gamma");
      const auto hull = transfer::build_capability_hull(transfer::read_pairs_csv(pairs_path));
      const Command mapped = transfer::map_command({v[0], v[1]}, hull, psi, n_vertices);
      out << nlohmann::json{{"v", mapped.v}, {"gamma", mapped.gamma}}.dump() << "\n";
      return kExitOk;
    }

    sim::ScenarioConfig config = load_config(common);

    if (calibrate->parsed()) {
      if (!grid_text.empty()) {
        const auto x = grid_text.find('x');
        if (x == std::string::npos) throw Error(Errc::ValidationError, "--grid: expected NxM");
        try {
          config.calibration_grid = {std::stoul(grid_text.substr(0, x)), std::stoul(grid_text.substr(x + 1))};
        } catch (const std::exception&) {
          throw Error(Errc::ValidationError, "--grid: expected NxM");
        }
      }
      if (duration) config.calibration_duration = *duration;
      config.pairs_file.clear();
      sim::validate_config(config);
      const auto dir = ensure_out(config);
      const auto pairs = sim::scenario_pairs(config);
      transfer::write_pairs_csv((dir / "pairs.csv").string(), pairs);
      out << "wrote " << pairs.size() << " pairs to " << (dir / "pairs.csv").string() << "\n";
      return kExitOk;
    }

    sim::validate_config(config);
    const auto hull = transfer::build_capability_hull(sim::scenario_pairs(config));
    const auto grid = calibration::command_grid(config.primitive_grid.n_v, config.primitive_grid.n_gamma);

    if (build->parsed()) {
      const auto lib = planner::build_library(grid, unfiltered ? nullptr : &hull, config.teacher,
                                              config.primitive_duration, config.dt);
      const auto dir = ensure_out(config);
      sim::write_text((dir / "library.json").string(), planner::library_to_json(lib));
      out << "wrote " << lib.primitives.size() << " primitives (" << lib.admissible_count() << " admissible) to "
          << (dir / "library.json").string() << "\n";
      return kExitOk;
    }

    if (plan->parsed()) {
      const auto path = sim::build_path(config.path);
      Pose pose{path.waypoints.front().x, path.waypoints.front().y, path.headings.front()};
      if (!pose_text.empty()) {
        const auto p = parse_numbers(pose_text, ',', "--pose");
        if (p.size() != 3) throw Error(Errc::ValidationError, "--pose: expected x,y,theta");
        pose = {p[0], p[1], p[2]};
      }
      const auto lib = planner::build_library(grid, &hull, config.teacher, config.primitive_duration, config.dt);
      const auto result = planner::plan_step(pose, path, lib, config.horizon, {config.k_d, config.k_theta});
      out << "step,index,v,gamma,cost\n";
      for (std::size_t k = 0; k < result.chosen.size(); ++k) {
        const auto& prim = lib.primitives[result.chosen[k]];
        out << k << "," << result.chosen[k] << "," << num(prim.command.v) << "," << num(prim.command.gamma) << ","
            << num(result.costs[k]) << "\n";
      }
      return kExitOk;
    }

    if (simulate->parsed()) {
      config.baseline = baseline;
      const auto dir = ensure_out(config);
      sim::write_text((dir / "config.json").string(), emit_config(config));
      const auto trace = sim::run_scenario(config);
      const auto path = sim::build_path(config.path);
      const auto metrics = sim::trace_metrics(trace, path);
      sim::write_text((dir / "trace.csv").string(), sim::trace_to_csv(trace));
      sim::write_text((dir / "plans.csv").string(), sim::plans_to_csv(trace));
      sim::write_text((dir / "metrics.json").string(), sim::metrics_to_json(metrics, trace));
      sim::write_text((dir / "trajectory.svg").string(), sim::trace_to_svg(trace, path, config.obstacles));
      out << sim::metrics_to_json(metrics, trace);
      if (!trace.success) {
        err << errc_name(Errc::MissionFailed) << ": " << trace.failure << "\n";
        return kExitMissionFailed;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::MissionFailed ? kExitMissionFailed : kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  err << app.help();
  return kExitConfigError;
}

}  // namespace scmt::cli
