#pragma once

#include <span>

#include "scmt/types.hpp"

namespace scmt::planner {

/// Dynamic time warping distance: minimum over monotone alignments of the
/// summed Euclidean distances of matched points. Both sequences non-empty.
double dtw(std::span<const Point2> a, std::span<const Point2> b);

}  // namespace scmt::planner
