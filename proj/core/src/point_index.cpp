#include "alat/point_index.hpp"

#include <algorithm>
#include <cmath>

namespace alat {

PointIndex::PointIndex(const PointSet& set) : set_(&set) {
  coords_.reserve(set.points.size());
  by_x_.reserve(set.points.size());
  members_.reserve(set.points.size());
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    coords_.push_back(embed(set.points[i]));
    by_x_.emplace_back(coords_.back()[0], i);
    members_.insert(set.points[i]);
  }
  std::sort(by_x_.begin(), by_x_.end());
  if (by_x_.size() >= 2) {
    const double span = by_x_.back().first - by_x_.front().first;
    const double dim = set.ambient == Ambient::Line ? 1.0 : (set.ambient == Ambient::Plane ? 2.0 : 3.0);
    spacing_ = std::max(1e-6, span / std::pow(static_cast<double>(by_x_.size()), 1.0 / dim));
  }
}

std::vector<std::size_t> PointIndex::slab(double lo, double hi) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(by_x_.begin(), by_x_.end(), std::make_pair(lo, std::size_t{0}));
  for (; it != by_x_.end() && it->first <= hi; ++it) out.push_back(it->second);
  return out;
}

std::vector<std::size_t> PointIndex::ball(const GroupElem& center, double radius) const {
  const Coords c = embed(center);
  const double slack = 1e-9 * (1 + std::abs(c[0]) + radius);
  std::vector<std::size_t> out;
  for (std::size_t i : slab(c[0] - radius - slack, c[0] + radius + slack)) {
    // Float prefilter, then the exact-difference distance.
    if (float_distance(set_->ambient, c, coords_[i]) > radius + slack) continue;
    if (distance(center, set_->points[i]) <= radius) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> PointIndex::ball(const Coords& center, double radius) const {
  std::vector<std::size_t> out;
  for (std::size_t i : slab(center[0] - radius, center[0] + radius)) {
    if (float_distance(set_->ambient, center, coords_[i]) <= radius) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<std::size_t, double>> PointIndex::nearest(
    const GroupElem& center, std::optional<std::size_t> exclude) const {
  const std::size_t available = set_->points.size() - (exclude ? 1 : 0);
  if (available == 0) return std::nullopt;
  double r = initial_radius();
  for (;;) {
    std::optional<std::pair<std::size_t, double>> best;
    for (std::size_t i : ball(center, r)) {
      if (exclude && *exclude == i) continue;
      const double dist = distance(center, set_->points[i]);
      if (!best || dist < best->second - 1e-12 ||
          (std::abs(dist - best->second) <= 1e-12 && set_->points[i] < set_->points[best->first])) {
        best = std::make_pair(i, dist);
      }
    }
    if (best) return best;
    r *= 2;
    if (!std::isfinite(r)) return std::nullopt;
  }
}

std::optional<std::pair<std::size_t, double>> PointIndex::nearest(const Coords& center) const {
  if (set_->points.empty()) return std::nullopt;
  double r = initial_radius();
  for (;;) {
    std::optional<std::pair<std::size_t, double>> best;
    for (std::size_t i : ball(center, r)) {
      const double dist = float_distance(set_->ambient, center, coords_[i]);
      if (!best || dist < best->second - 1e-12 ||
          (std::abs(dist - best->second) <= 1e-12 && set_->points[i] < set_->points[best->first])) {
        best = std::make_pair(i, dist);
      }
    }
    if (best) return best;
    r *= 2;
    if (!std::isfinite(r)) return std::nullopt;
  }
}

}  // namespace alat
