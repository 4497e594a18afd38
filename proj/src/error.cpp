#include "scmt/error.hpp"

namespace scmt {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotSimple: return "NotSimple";
    case Errc::ClockwiseOrder: return "ClockwiseOrder";
    case Errc::DegenerateVertex: return "DegenerateVertex";
    case Errc::InvalidCorners: return "InvalidCorners";
    case Errc::SingularInterior: return "SingularInterior";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::CrowdingWarning: return "CrowdingWarning";
    case Errc::OutsideStrip: return "OutsideStrip";
    case Errc::ModulusOutOfRange: return "ModulusOutOfRange";
    case Errc::OutsidePolygon: return "OutsidePolygon";
    case Errc::OutsideRectangle: return "OutsideRectangle";
    case Errc::InverseNoConvergence: return "InverseNoConvergence";
    case Errc::DegenerateHull: return "DegenerateHull";
    case Errc::OutsideCapability: return "OutsideCapability";
    case Errc::NoContainingPolygon: return "NoContainingPolygon";
    case Errc::BlackBoxFault: return "BlackBoxFault";
    case Errc::InconsistentMotion: return "InconsistentMotion";
    case Errc::EmptyAdmissibleSet: return "EmptyAdmissibleSet";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::MissionFailed: return "MissionFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace scmt
