#pragma once

#include <string>

#include "scmt/sim/scenario.hpp"

namespace scmt::cli {

/// Parses a JSON scenario document. Missing keys take the ScenarioConfig
/// defaults; angles may be written as numbers or as "pi/8", "2*pi/3".
/// Throws Error{ParseError} (malformed JSON, with line and column) or
/// Error{ValidationError} whose message starts with the offending field.
sim::ScenarioConfig parse_config(const std::string& text);

/// Full document with every field resolved; parse_config(emit_config(c)) == c.
std::string emit_config(const sim::ScenarioConfig& config);

}  // namespace scmt::cli
