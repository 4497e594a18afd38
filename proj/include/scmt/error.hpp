#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scmt {

enum class Errc {
  // scm_core
  NotSimple,
  ClockwiseOrder,
  DegenerateVertex,
  InvalidCorners,
  SingularInterior,
  NoConvergence,
  CrowdingWarning,
  OutsideStrip,
  ModulusOutOfRange,
  OutsidePolygon,
  OutsideRectangle,
  InverseNoConvergence,
  // transfer
  DegenerateHull,
  OutsideCapability,
  NoContainingPolygon,
  // calibration
  BlackBoxFault,
  InconsistentMotion,
  // planner
  EmptyAdmissibleSet,
  // sim / cli
  ConfigInvalid,
  MissionFailed,
  ParseError,
  ValidationError,
};

std::string_view errc_name(Errc code) noexcept;

/// Library-wide exception. Every failure mode named by a module contract
/// is reported through one of these with the matching code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace scmt
