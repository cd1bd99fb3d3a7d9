#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "alat/point_set.hpp"

namespace alat {

/// Read-only spatial index over a PointSet's points.
///
/// Points are sorted by their first real coordinate; ball queries scan the
/// matching slab and filter by the ambient distance. Nearest-point queries
/// break ties by canonical exact order.
class PointIndex {
 public:
  explicit PointIndex(const PointSet& set);

  const PointSet& set() const noexcept { return *set_; }

  /// Indices (into set().points) of points p with d(center, p) <= radius.
  std::vector<std::size_t> ball(const GroupElem& center, double radius) const;
  std::vector<std::size_t> ball(const Coords& center, double radius) const;

  /// Index of the nearest point to `center` and its distance, or nullopt for
  /// an empty set. If `exclude` is given, that point index is skipped.
  std::optional<std::pair<std::size_t, double>> nearest(
      const GroupElem& center, std::optional<std::size_t> exclude = std::nullopt) const;
  std::optional<std::pair<std::size_t, double>> nearest(const Coords& center) const;

  bool contains(const GroupElem& g) const { return members_.count(g) != 0; }

  const Coords& coords(std::size_t i) const { return coords_[i]; }

 private:
  std::vector<std::size_t> slab(double lo, double hi) const;
  double initial_radius() const noexcept { return spacing_; }

  const PointSet* set_;
  std::vector<Coords> coords_;
  std::vector<std::pair<double, std::size_t>> by_x_;
  std::unordered_set<GroupElem> members_;
  double spacing_ = 1.0;
};

}  // namespace alat
