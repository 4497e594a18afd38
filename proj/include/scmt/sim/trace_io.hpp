#pragma once

#include <string>

#include "scmt/sim/scenario.hpp"

namespace scmt::sim {

/// Columns: step,t,teacher_v,teacher_gamma,learner_v,learner_gamma,x,y,theta,
/// meas_x,meas_y,meas_theta,est_x,est_y,est_theta,plan_id,d_e,epsilon,replan. Values use %.17g so
/// a read-back is exact.
std::string trace_to_csv(const SimTrace& trace);
/// Columns: plan_id,k,x,y,theta.
std::string plans_to_csv(const SimTrace& trace);
/// Inverse of trace_to_csv + plans_to_csv (success/collision are not stored).
SimTrace trace_from_csv(const std::string& trace_csv, const std::string& plans_csv);

std::string metrics_to_json(const TraceMetrics& metrics, const SimTrace& trace);
std::string trace_to_svg(const SimTrace& trace, const planner::PathSpec& path, const std::vector<Obstacle>& obstacles);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace scmt::sim
