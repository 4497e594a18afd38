#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "scmt/scm/rectangle_map.hpp"
#include "scmt/transfer/hull.hpp"

namespace scmt::transfer {

/// Corresponding teacher / learner polygons built from the same command
/// pairs, each solved onto its own rectangle.
struct MappingRegion {
  scm::Polygon teacher_polygon;
  scm::Polygon learner_polygon;
  std::shared_ptr<const scm::RectangleMap> teacher_map;
  std::shared_ptr<const scm::RectangleMap> learner_map;
  std::vector<std::size_t> pair_indices;

  /// Teacher rectangle -> unit square -> learner rectangle -> learner polygon.
  Command map(Command desired) const;
};

struct TransferOptions {
  /// Shortcut radius: closer than this to a pair, reuse its learner command.
  double psi = 0.02;
  std::size_t n_vertices = 4;
};

/// Bounded LRU cache of solved regions keyed by their ordered pair indices.
/// Lookups and inserts are serialized by an internal mutex.
class RegionCache {
 public:
  explicit RegionCache(std::size_t capacity = 256) : capacity_(capacity) {}

  std::shared_ptr<const MappingRegion> find(const std::vector<std::size_t>& key);
  void insert(const std::vector<std::size_t>& key, std::shared_ptr<const MappingRegion> region);
  std::size_t size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::size_t>& k) const noexcept;
  };
  using Entry = std::pair<std::vector<std::size_t>, std::shared_ptr<const MappingRegion>>;

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> lru_;
  std::unordered_map<std::vector<std::size_t>, std::list<Entry>::iterator, KeyHash> index_;
};

/// Picks the n_vertices pairs around `desired` that strictly contain it with
/// the least total distance (ties: smaller area), and solves both maps.
/// Throws Error{OutsideCapability | NoContainingPolygon}.
MappingRegion select_mapping_region(Command desired, const CapabilityHull& hull, std::size_t n_vertices,
                                    RegionCache* cache = nullptr);

/// Maps a desired teacher command to the learner. Throws
/// Error{OutsideCapability | InverseNoConvergence}.
Command map_command(Command desired, const CapabilityHull& hull, double psi, std::size_t n_vertices = 4,
                    RegionCache* cache = nullptr);

/// Hull plus region cache bundled for repeated queries.
class CommandMapper {
 public:
  CommandMapper(CapabilityHull hull, TransferOptions options)
      : hull_(std::move(hull)), options_(options), cache_(std::make_unique<RegionCache>()) {}

  Command map(Command desired) const {
    return map_command(desired, hull_, options_.psi, options_.n_vertices, cache_.get());
  }
  const CapabilityHull& hull() const { return hull_; }
  const TransferOptions& options() const { return options_; }

 private:
  CapabilityHull hull_;
  TransferOptions options_;
  std::unique_ptr<RegionCache> cache_;
};

}  // namespace scmt::transfer
