#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alat/group.hpp"
#include "alat/metric.hpp"

namespace alat {

/// One closed interval of a window box.
struct Interval {
  double lo = 0;
  double hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed box in internal space, one interval per internal coordinate.
struct Window {
  std::vector<Interval> intervals;

  static Window symmetric_box(std::size_t dim, double half_width);
  /// lo < hi everywhere; throws InvalidArgument otherwise.
  void validate() const;
  bool symmetric() const noexcept;
  std::size_t dim() const noexcept { return intervals.size(); }
  double width(std::size_t i) const { return intervals.at(i).hi - intervals.at(i).lo; }
  /// Box scaled about the origin.
  Window scaled(double factor) const;
  /// Minkowski sum with another box of the same dimension.
  Window sum(const Window& other) const;
  bool contains(const Window& other) const noexcept;
  std::string to_string() const;
  static Window parse(std::string_view text);

  friend bool operator==(const Window&, const Window&) = default;
};

enum class SchemeFamily { QuadraticLine, QuadraticPlane, HeisQuadratic };

std::string_view scheme_family_name(SchemeFamily f) noexcept;

/// Cut-and-project scheme with Gamma = Z[sqrt(d)]-points embedded by (x, x*).
struct Scheme {
  SchemeFamily family = SchemeFamily::QuadraticLine;
  std::int64_t d = 2;
  Window window;

  Ambient ambient() const noexcept;
  /// Number of internal coordinates the window must have.
  std::size_t internal_dim() const noexcept;
  void validate() const;
};

enum class Family { Integers, Fish, QuadLine, QuadPlane, HeisQuad, Visible, Custom };

std::string_view family_name(Family f) noexcept;
Family family_from_name(std::string_view name);

/// Finite enumerated fragment of a point set.
///
/// `points` is complete inside the ball of radius `enum_radius` about the
/// identity. `core_radius` (<= enum_radius) bounds the region where derived
/// objects (products, patches) built from this fragment are complete.
/// Points are kept sorted in canonical exact order and free of duplicates.
struct PointSet {
  Family family = Family::Custom;
  Ambient ambient = Ambient::Line;
  std::int64_t d = 2;
  std::vector<GroupElem> points;
  double enum_radius = 0;
  double core_radius = 0;
  std::optional<Scheme> scheme;
  std::map<std::string, std::string> provenance;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool contains(const GroupElem& g) const;
  bool has_identity() const;
  /// x^-1 is listed for every listed x whose inverse lies in the enumeration ball.
  bool is_symmetric() const;
  GroupElem identity() const;

  /// Points with norm <= radius.
  std::vector<GroupElem> within(double radius) const;
  std::vector<GroupElem> core_points() const { return within(core_radius); }

  /// Sorts, dedups and checks metadata invariants (InvalidArgument).
  void canonicalize();
  void validate() const;
};

/// Build a point set of integers from explicit values (family Integers unless overridden).
PointSet integer_point_set(const std::vector<std::int64_t>& values, double enum_radius,
                           Family family = Family::Integers);

/// Z intersected with [-radius, radius].
PointSet integer_lattice(std::int64_t radius);

/// k*Z intersected with [-radius, radius].
PointSet integer_multiples(std::int64_t k, std::int64_t radius);

/// P with the identity added.
PointSet with_identity(PointSet p);

}  // namespace alat
