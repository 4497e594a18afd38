#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scmt/types.hpp"

namespace scmt::transfer {

/// Teacher command and learner command that produce the same motion.
struct CommandPair {
  Command teacher;
  Command learner;

  friend bool operator==(const CommandPair&, const CommandPair&) = default;
};

/// Convex hull of the teacher-side commands of a set of pairs. Its interior
/// is the region of teacher commands the learner can reproduce.
struct CapabilityHull {
  std::vector<CommandPair> pairs;
  /// Pair indices of the hull boundary, counterclockwise. Collinear boundary
  /// points are kept.
  std::vector<std::size_t> hull_vertices;

  static constexpr double kTolerance = 1e-12;

  std::vector<Complex> boundary() const;
  /// Inside or on the hull (signed-area test, tolerance kTolerance).
  bool contains(Command c) const;
  /// Strictly inside, at least kTolerance away from every edge line.
  bool contains_strictly(Command c) const;
};

/// Monotone-chain hull. Throws Error{DegenerateHull} when fewer than three
/// non-collinear teacher commands are given.
CapabilityHull build_capability_hull(std::vector<CommandPair> pairs);

}  // namespace scmt::transfer
