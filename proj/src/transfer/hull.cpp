#include "scmt/transfer/hull.hpp"

#include <algorithm>
#include <numeric>

#include "scmt/error.hpp"

namespace scmt::transfer {

namespace {

double cross(Command o, Command a, Command b) {
  return (a.v - o.v) * (b.gamma - o.gamma) - (a.gamma - o.gamma) * (b.v - o.v);
}

}  // namespace

CapabilityHull build_capability_hull(std::vector<CommandPair> pairs) {
  constexpr double tol = CapabilityHull::kTolerance;
  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto at = [&](std::size_t i) { return pairs[i].teacher; };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Command ca = at(a);
    const Command cb = at(b);
    return ca.v < cb.v || (ca.v == cb.v && ca.gamma < cb.gamma);
  });
  // Drop exact duplicates of the teacher command.
  idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return at(a) == at(b); }),
            idx.end());
  if (idx.size() < 3) throw Error(Errc::DegenerateHull, "fewer than three distinct teacher commands");

  bool collinear = true;
  for (std::size_t i = 2; i < idx.size() && collinear; ++i)
    if (std::abs(cross(at(idx[0]), at(idx[1]), at(idx[i]))) > tol) collinear = false;
  if (collinear) throw Error(Errc::DegenerateHull, "teacher commands are collinear");

  // Strict hull first, then re-insert points lying on hull edges.
  std::vector<std::size_t> hull;
  for (std::size_t i : idx) {
    while (hull.size() >= 2 && cross(at(hull[hull.size() - 2]), at(hull.back()), at(i)) <= tol) hull.pop_back();
    hull.push_back(i);
  }
  const std::size_t lower = hull.size() + 1;
  for (std::size_t k = idx.size() - 1; k-- > 0;) {
    const std::size_t i = idx[k];
    while (hull.size() >= lower && cross(at(hull[hull.size() - 2]), at(hull.back()), at(i)) <= tol) hull.pop_back();
    hull.push_back(i);
  }
  hull.pop_back();

  std::vector<std::size_t> boundary;
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const Command a = at(hull[e]);
    const Command b = at(hull[(e + 1) % hull.size()]);
    const double len2 = (b.v - a.v) * (b.v - a.v) + (b.gamma - a.gamma) * (b.gamma - a.gamma);
    std::vector<std::pair<double, std::size_t>> on_edge;
    for (std::size_t i : idx) {
      if (i == hull[e] || i == hull[(e + 1) % hull.size()]) continue;
      const Command c = at(i);
      const double t = ((c.v - a.v) * (b.v - a.v) + (c.gamma - a.gamma) * (b.gamma - a.gamma)) / len2;
      if (t > 0.0 && t < 1.0 && std::abs(cross(a, b, c)) <= tol * std::sqrt(len2)) on_edge.emplace_back(t, i);
    }
    std::sort(on_edge.begin(), on_edge.end());
    boundary.push_back(hull[e]);
    for (const auto& [t, i] : on_edge) boundary.push_back(i);
  }

  CapabilityHull result;
  result.pairs = std::move(pairs);
  result.hull_vertices = std::move(boundary);
  return result;
}

std::vector<Complex> CapabilityHull::boundary() const {
  std::vector<Complex> out;
  out.reserve(hull_vertices.size());
  for (std::size_t i : hull_vertices) out.push_back(pairs[i].teacher.as_complex());
  return out;
}

bool CapabilityHull::contains(Command c) const {
  const std::size_t n = hull_vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Command a = pairs[hull_vertices[k]].teacher;
    const Command b = pairs[hull_vertices[(k + 1) % n]].teacher;
    if (cross(a, b, c) < -kTolerance) return false;
  }
  return true;
}

bool CapabilityHull::contains_strictly(Command c) const {
  const std::size_t n = hull_vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Command a = pairs[hull_vertices[k]].teacher;
    const Command b = pairs[hull_vertices[(k + 1) % n]].teacher;
    const double len = std::hypot(b.v - a.v, b.gamma - a.gamma);
    if (cross(a, b, c) <= kTolerance * std::max(len, 1.0)) return false;
  }
  return true;
}

}  // namespace scmt::transfer
