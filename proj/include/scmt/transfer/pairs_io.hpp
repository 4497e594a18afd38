#pragma once

#include <string>
#include <vector>

#include "scmt/transfer/hull.hpp"

namespace scmt::transfer {

/// CSV with header vT,gammaT,vL,gammaL.
void write_pairs_csv(const std::string& path, const std::vector<CommandPair>& pairs);
/// Throws Error{ParseError} with the offending line number.
std::vector<CommandPair> read_pairs_csv(const std::string& path);

}  // namespace scmt::transfer
