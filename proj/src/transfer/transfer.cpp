#include "scmt/transfer/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "scmt/error.hpp"

namespace scmt::transfer {

Command MappingRegion::map(Command desired) const {
  const Complex qt = teacher_map->polygon_to_rect(desired.as_complex());
  const double u = (qt.real() + teacher_map->K()) / (2.0 * teacher_map->K());
  const double v = qt.imag() / teacher_map->Kp();
  const double kl = learner_map->K();
  const Complex ql{std::clamp(-kl + 2.0 * kl * u, -kl, kl), std::clamp(v, 0.0, 1.0) * learner_map->Kp()};
  return Command::from_complex(learner_map->rect_to_polygon(ql));
}

// ---------------------------------------------------------------------------

std::size_t RegionCache::KeyHash::operator()(const std::vector<std::size_t>& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t v : k) h = (h ^ v) * 1099511628211ull;
  return h;
}

std::shared_ptr<const MappingRegion> RegionCache::find(const std::vector<std::size_t>& key) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->second;
}

void RegionCache::insert(const std::vector<std::size_t>& key, std::shared_ptr<const MappingRegion> region) {
  std::lock_guard lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) {
    it->second->second = std::move(region);
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  lru_.emplace_front(key, std::move(region));
  index_.emplace(key, lru_.begin());
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

std::size_t RegionCache::size() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  std::vector<std::size_t> ordered;  // pair indices, counterclockwise around desired
  double score = 0.0;
  double area = 0.0;
};

/// Orders the subset by angle around `desired`; accepts it only if desired
/// is strictly inside (every angular gap below pi, off every edge).
bool star_polygon(Command desired, const CapabilityHull& hull, std::vector<std::size_t>& subset) {
  const Complex d = desired.as_complex();
  std::vector<double> angle(hull.pairs.size());
  for (std::size_t i : subset) angle[i] = std::arg(hull.pairs[i].teacher.as_complex() - d);
  std::sort(subset.begin(), subset.end(), [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
  const std::size_t n = subset.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double a0 = angle[subset[k]];
    const double a1 = angle[subset[(k + 1) % n]] + (k + 1 == n ? 2.0 * kPi : 0.0);
    const double gap = a1 - a0;
    if (!(gap > 1e-12 && gap < kPi - 1e-9)) return false;
  }
  std::vector<Complex> poly;
  for (std::size_t i : subset) poly.push_back(hull.pairs[i].teacher.as_complex());
  double diam = 0.0;
  for (auto a : poly)
    for (auto b : poly) diam = std::max(diam, std::abs(a - b));
  return scm::distance_to_boundary(poly, d) > 1e-9 * diam;
}

std::array<std::size_t, 4> pick_corners(const std::vector<Complex>& verts) {
  const std::size_t n = verts.size();
  if (n == 4) return {0, 1, 2, 3};
  // The four sharpest vertices become the rectangle corners.
  std::vector<double> alpha(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex in = verts[j] - verts[(j + n - 1) % n];
    const Complex out = verts[(j + 1) % n] - verts[j];
    alpha[j] = 1.0 - std::arg(out / in) / kPi;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return alpha[a] < alpha[b]; });
  std::array<std::size_t, 4> c{idx[0], idx[1], idx[2], idx[3]};
  std::sort(c.begin(), c.end());
  return c;
}

std::shared_ptr<const MappingRegion> solve_region(const CapabilityHull& hull, const std::vector<std::size_t>& ordered) {
  std::vector<Complex> tv;
  std::vector<Complex> lv;
  for (std::size_t i : ordered) {
    tv.push_back(hull.pairs[i].teacher.as_complex());
    lv.push_back(hull.pairs[i].learner.as_complex());
  }
  const auto corners = pick_corners(tv);
  auto region = std::make_shared<MappingRegion>();
  region->teacher_polygon = scm::validate_polygon(tv, corners);
  region->learner_polygon = scm::validate_polygon(lv, corners);
  region->teacher_map = std::make_shared<const scm::RectangleMap>(scm::RectangleMap::build(region->teacher_polygon));
  region->learner_map = std::make_shared<const scm::RectangleMap>(scm::RectangleMap::build(region->learner_polygon));
  region->pair_indices = ordered;
  return region;
}

void for_each_subset(std::size_t pool, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    fn(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

MappingRegion select_mapping_region(Command desired, const CapabilityHull& hull, std::size_t n_vertices,
                                    RegionCache* cache) {
  if (n_vertices < 4 || n_vertices > 12) throw Error(Errc::NoContainingPolygon, "n_vertices must be in [4, 12]");
  if (!hull.contains(desired)) throw Error(Errc::OutsideCapability, "desired command outside the capability hull");

  const Complex d = desired.as_complex();
  std::vector<std::size_t> by_distance(hull.pairs.size());
  std::iota(by_distance.begin(), by_distance.end(), 0);
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(hull.pairs[a].teacher.as_complex() - d) < std::abs(hull.pairs[b].teacher.as_complex() - d);
  });
  const std::size_t pool = std::min(by_distance.size(), n_vertices + 6);
  if (pool < n_vertices) throw Error(Errc::NoContainingPolygon, "not enough command pairs");

  std::vector<Candidate> candidates;
  for_each_subset(pool, n_vertices, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> subset;
    double score = 0.0;
    for (std::size_t p : pick) {
      subset.push_back(by_distance[p]);
      score += std::abs(hull.pairs[by_distance[p]].teacher.as_complex() - d);
    }
    if (!star_polygon(desired, hull, subset)) return;
    std::vector<Complex> poly;
    for (std::size_t i : subset) poly.push_back(hull.pairs[i].teacher.as_complex());
    candidates.push_back({std::move(subset), score, scm::polygon_area(poly)});
  });
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.area < b.area;
  });

  for (const Candidate& c : candidates) {
    if (cache) {
      if (auto hit = cache->find(c.ordered)) return *hit;
    }
    try {
      auto region = solve_region(hull, c.ordered);
      if (cache) cache->insert(c.ordered, region);
      return *region;
    } catch (const Error&) {
      // Learner polygon folded or the solve failed: try the next candidate.
      continue;
    }
  }
  throw Error(Errc::NoContainingPolygon, "no simple polygon of command pairs contains the command");
}

Command map_command(Command desired, const CapabilityHull& hull, double psi, std::size_t n_vertices,
                    RegionCache* cache) {
  if (!hull.contains(desired)) throw Error(Errc::OutsideCapability, "desired command outside the capability hull");
  double best = std::numeric_limits<double>::infinity();
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < hull.pairs.size(); ++i) {
    const double dist = std::abs(hull.pairs[i].teacher.as_complex() - desired.as_complex());
    if (dist < best) {
      best = dist;
      nearest = i;
    }
  }
  if (best < psi || best == 0.0) return hull.pairs[nearest].learner;
  return select_mapping_region(desired, hull, n_vertices, cache).map(desired);
}

}  // namespace scmt::transfer
