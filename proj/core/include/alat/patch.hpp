#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "alat/group.hpp"

namespace alat {

/// Center-normalized cluster x^-1 (Lambda n B_rho(x)), the finite-radius
/// stand-in for a point of the hull. Points are sorted canonically, so exact
/// equality of the vectors is equality of patches. An empty point list is the
/// empty-patch marker.
struct Patch {
  std::vector<GroupElem> points;
  double radius = 0;

  bool is_empty_marker() const noexcept { return points.empty(); }

  friend bool operator==(const Patch& l, const Patch& r) { return l.points == r.points; }
  friend auto operator<=>(const Patch& l, const Patch& r) { return l.points <=> r.points; }
};

struct PatchCount {
  Patch patch;
  std::size_t count = 0;
};

}  // namespace alat
