#include "scmt/sim/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "scmt/error.hpp"

namespace scmt::sim {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& s, std::size_t lineno) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
}

template <typename F>
void for_rows(const std::string& csv, std::size_t columns, F&& f) {
  std::stringstream in(csv);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != columns)
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns");
    std::vector<double> vals;
    for (const auto& c : cells) vals.push_back(parse_double(c, lineno));
    f(vals);
  }
}

}  // namespace

std::string trace_to_csv(const SimTrace& trace) {
  std::string out = "step,t,teacher_v,teacher_gamma,learner_v,learner_gamma,x,y,theta,meas_x,meas_y,meas_theta,est_x,est_y,est_theta,plan_id,d_e,epsilon,replan\n";
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.step);
    for (double v : {r.t, r.teacher_command.v, r.teacher_command.gamma, r.learner_command.v, r.learner_command.gamma,
                     r.state.x, r.state.y, r.state.theta, r.measured.x, r.measured.y, r.measured.theta,
                     r.estimate.x, r.estimate.y, r.estimate.theta})
      out += "," + num(v);
    out += "," + std::to_string(r.plan_id) + "," + num(r.deviation) + "," + num(r.epsilon) + "," + (r.replan ? "1" : "0") + "\n";
  }
  return out;
}

std::string plans_to_csv(const SimTrace& trace) {
  std::string out = "plan_id,k,x,y,theta\n";
  for (std::size_t id = 0; id < trace.plans.size(); ++id)
    for (std::size_t k = 0; k < trace.plans[id].size(); ++k) {
      const Pose& p = trace.plans[id][k];
      out += std::to_string(id) + "," + std::to_string(k) + "," + num(p.x) + "," + num(p.y) + "," + num(p.theta) + "\n";
    }
  return out;
}

SimTrace trace_from_csv(const std::string& trace_csv, const std::string& plans_csv) {
  SimTrace trace;
  for_rows(trace_csv, 19, [&](const std::vector<double>& v) {
    TraceRecord r;
    r.step = static_cast<std::size_t>(v[0]);
    r.t = v[1];
    r.teacher_command = {v[2], v[3]};
    r.learner_command = {v[4], v[5]};
    r.state = {v[6], v[7], v[8], v[1]};
    r.measured = {v[9], v[10], v[11]};
    r.estimate = {v[12], v[13], v[14]};
    r.plan_id = static_cast<std::size_t>(v[15]);
    r.deviation = v[16];
    r.epsilon = v[17];
    r.replan = v[18] != 0.0;
    trace.records.push_back(r);
  });
  for_rows(plans_csv, 5, [&](const std::vector<double>& v) {
    const auto id = static_cast<std::size_t>(v[0]);
    if (trace.plans.size() <= id) trace.plans.resize(id + 1);
    trace.plans[id].push_back({v[2], v[3], v[4]});
  });
  return trace;
}

std::string metrics_to_json(const TraceMetrics& m, const SimTrace& trace) {
  nlohmann::json j;
  j["max_path_deviation"] = m.max_path_deviation;
  j["mean_path_deviation"] = m.mean_path_deviation;
  j["max_plan_deviation"] = m.max_plan_deviation;
  j["replan_count"] = m.replan_count;
  j["steps"] = m.steps;
  j["success"] = m.success;
  j["collision"] = trace.collision;
  j["failure"] = trace.failure;
  j["plans"] = trace.plans.size();
  return j.dump(2) + "\n";
}

std::string trace_to_svg(const SimTrace& trace, const planner::PathSpec& path, const std::vector<Obstacle>& obstacles) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](double x, double y, double r = 0.0) {
    lo_x = std::min(lo_x, x - r);
    lo_y = std::min(lo_y, y - r);
    hi_x = std::max(hi_x, x + r);
    hi_y = std::max(hi_y, y + r);
  };
  for (const Point2& p : path.waypoints) grow(p.x, p.y);
  for (const TraceRecord& r : trace.records) grow(r.state.x, r.state.y);
  for (const Obstacle& o : obstacles) grow(o.x, o.y, o.radius);
  const double pad = 0.5;
  lo_x -= pad;
  lo_y -= pad;
  hi_x += pad;
  hi_y += pad;
  const double scale = 600.0 / std::max(hi_x - lo_x, hi_y - lo_y);
  auto X = [&](double x) { return num((x - lo_x) * scale); };
  auto Y = [&](double y) { return num((hi_y - y) * scale); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num((hi_x - lo_x) * scale) + "\" height=\"" +
                    num((hi_y - lo_y) * scale) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Obstacle& o : obstacles)
    svg += "<circle cx=\"" + X(o.x) + "\" cy=\"" + Y(o.y) + "\" r=\"" + num(o.radius * scale) + "\" fill=\"#c44\" fill-opacity=\"0.5\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"2\" stroke-dasharray=\"6,4\" points=\"";
  for (const Point2& p : path.waypoints) svg += X(p.x) + "," + Y(p.y) + " ";
  svg += "\"/>\n<polyline fill=\"none\" stroke=\"#14c\" stroke-width=\"1.5\" points=\"";
  for (const TraceRecord& r : trace.records) svg += X(r.state.x) + "," + Y(r.state.y) + " ";
  svg += "\"/>\n";
  for (const TraceRecord& r : trace.records)
    if (r.replan) svg += "<circle cx=\"" + X(r.state.x) + "\" cy=\"" + Y(r.state.y) + "\" r=\"3\" fill=\"#f80\"/>\n";
  svg += "</svg>\n";
  return svg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ConfigInvalid, "cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace scmt::sim
