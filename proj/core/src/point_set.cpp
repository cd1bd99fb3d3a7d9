#include "alat/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alat/error.hpp"

namespace alat {

Window Window::symmetric_box(std::size_t dim, double half_width) {
  Window w;
  w.intervals.assign(dim, Interval{-half_width, half_width});
  return w;
}

void Window::validate() const {
  if (intervals.empty()) throw InvalidArgument("window has no intervals");
  for (const auto& iv : intervals) {
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi)) || !(iv.lo < iv.hi))
      throw InvalidArgument("window interval [" + std::to_string(iv.lo) + ", " +
                            std::to_string(iv.hi) + "] has empty interior");
  }
}

bool Window::symmetric() const noexcept {
  return std::all_of(intervals.begin(), intervals.end(),
                     [](const Interval& iv) { return iv.lo == -iv.hi; });
}

Window Window::scaled(double factor) const {
  Window w = *this;
  for (auto& iv : w.intervals) {
    iv.lo *= factor;
    iv.hi *= factor;
  }
  return w;
}

Window Window::sum(const Window& other) const {
  if (other.dim() != dim()) throw InvalidArgument("window dimension mismatch");
  Window w = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    w.intervals[i].lo += other.intervals[i].lo;
    w.intervals[i].hi += other.intervals[i].hi;
  }
  return w;
}

bool Window::contains(const Window& other) const noexcept {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (other.intervals[i].lo < intervals[i].lo || other.intervals[i].hi > intervals[i].hi)
      return false;
  }
  return true;
}

std::string Window::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) os << ';';
    os << intervals[i].lo << ',' << intervals[i].hi;
  }
  return os.str();
}

Window Window::parse(std::string_view text) {
  Window w;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string part(text.substr(start, end - start));
    const std::size_t comma = part.find(',');
    if (comma == std::string::npos)
      throw InvalidArgument("window interval '" + part + "' must be lo,hi");
    try {
      std::size_t used_lo = 0;
      std::size_t used_hi = 0;
      const std::string lo_text = part.substr(0, comma);
      const std::string hi_text = part.substr(comma + 1);
      Interval iv{std::stod(lo_text, &used_lo), std::stod(hi_text, &used_hi)};
      if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument(part);
      w.intervals.push_back(iv);
    } catch (const std::logic_error&) {
      throw InvalidArgument("window interval '" + part + "' is not numeric");
    }
    start = end + 1;
  }
  w.validate();
  return w;
}

std::string_view scheme_family_name(SchemeFamily f) noexcept {
  switch (f) {
    case SchemeFamily::QuadraticLine: return "quad-line";
    case SchemeFamily::QuadraticPlane: return "quad-plane";
    case SchemeFamily::HeisQuadratic: return "heis";
  }
  return "?";
}

Ambient Scheme::ambient() const noexcept {
  switch (family) {
    case SchemeFamily::QuadraticLine: return Ambient::Line;
    case SchemeFamily::QuadraticPlane: return Ambient::Plane;
    case SchemeFamily::HeisQuadratic: return Ambient::Heisenberg;
  }
  return Ambient::Line;
}

std::size_t Scheme::internal_dim() const noexcept {
  switch (family) {
    case SchemeFamily::QuadraticLine: return 1;
    case SchemeFamily::QuadraticPlane: return 2;
    case SchemeFamily::HeisQuadratic: return 3;
  }
  return 1;
}

void Scheme::validate() const {
  if (!is_squarefree(d)) throw InvalidArgument("scheme ring parameter must be squarefree >= 2");
  window.validate();
  if (window.dim() != internal_dim())
    throw InvalidArgument("scheme " + std::string(scheme_family_name(family)) + " needs a " +
                          std::to_string(internal_dim()) + "-dimensional window");
}

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Integers: return "integers";
    case Family::Fish: return "fish";
    case Family::QuadLine: return "quad-line";
    case Family::QuadPlane: return "quad-plane";
    case Family::HeisQuad: return "heis";
    case Family::Visible: return "visible";
    case Family::Custom: return "custom";
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  for (Family f : {Family::Integers, Family::Fish, Family::QuadLine, Family::QuadPlane,
                   Family::HeisQuad, Family::Visible, Family::Custom}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

bool PointSet::contains(const GroupElem& g) const {
  return std::binary_search(points.begin(), points.end(), g);
}

GroupElem PointSet::identity() const {
  switch (ambient) {
    case Ambient::Line: return EuclidElem::zero(1, d);
    case Ambient::Plane: return EuclidElem::zero(2, d);
    case Ambient::Heisenberg: return HeisElem::identity(d);
  }
  return EuclidElem::zero(1, d);
}

bool PointSet::has_identity() const { return contains(identity()); }

bool PointSet::is_symmetric() const {
  return std::all_of(points.begin(), points.end(),
                     [this](const GroupElem& g) {
                       const GroupElem h = inverse(g);
                       return norm(h) > enum_radius || contains(h);
                     });
}

std::vector<GroupElem> PointSet::within(double radius) const {
  std::vector<GroupElem> out;
  for (const auto& g : points)
    if (norm(g) <= radius) out.push_back(g);
  return out;
}

void PointSet::canonicalize() {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  validate();
}

void PointSet::validate() const {
  if (!(enum_radius >= 0) || !(core_radius >= 0))
    throw InvalidArgument("point set radii must be nonnegative");
  if (core_radius > enum_radius)
    throw InvalidArgument("coreRadius " + std::to_string(core_radius) + " exceeds enumRadius " +
                          std::to_string(enum_radius));
  for (const auto& g : points) {
    if (ambient_of(g) != ambient)
      throw InvalidArgument("point " + to_string(g) + " does not live in ambient " +
                            std::string(ambient_name(ambient)));
  }
}

PointSet integer_point_set(const std::vector<std::int64_t>& values, double enum_radius,
                           Family family) {
  PointSet p;
  p.family = family;
  p.ambient = Ambient::Line;
  p.enum_radius = enum_radius;
  p.core_radius = enum_radius;
  for (auto v : values)
    if (std::abs(static_cast<double>(v)) <= enum_radius) p.points.push_back(EuclidElem::integer(v));
  p.provenance["generator"] = "integer_point_set";
  p.canonicalize();
  return p;
}

PointSet integer_lattice(std::int64_t radius) { return integer_multiples(1, radius); }

PointSet integer_multiples(std::int64_t k, std::int64_t radius) {
  if (k < 1 || radius < 0) throw InvalidArgument("integer_multiples needs k >= 1, radius >= 0");
  std::vector<std::int64_t> values;
  for (std::int64_t x = -(radius / k) * k; x <= radius; x += k) values.push_back(x);
  PointSet p = integer_point_set(values, static_cast<double>(radius));
  p.provenance["generator"] = "integer_multiples";
  p.provenance["k"] = std::to_string(k);
  return p;
}

PointSet with_identity(PointSet p) {
  p.points.push_back(p.identity());
  p.canonicalize();
  p.provenance["with_identity"] = "true";
  return p;
}

}  // namespace alat
