#include "alat/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "alat/checked.hpp"
#include "alat/cutproject.hpp"
#include "alat/error.hpp"
#include "alat/point_index.hpp"
#include "alat/verify.hpp"

namespace alat {

double PatchStats::frequency_of(const Patch& p) const {
  auto it = std::lower_bound(catalog.begin(), catalog.end(), p,
                             [](const PatchFrequency& e, const Patch& q) { return e.patch < q; });
  return it != catalog.end() && it->patch == p ? it->frequency : 0.0;
}

PatchStats transversal_stats(const PointSet& set, double rho) {
  PatchStats stats;
  stats.rho = rho;
  stats.center_radius = compose_slack(set.ambient, set.core_radius, rho);
  for (auto& pc : flc_patches(set, rho)) {
    stats.centers += pc.count;
    stats.catalog.push_back(PatchFrequency{std::move(pc.patch), pc.count, 0});
  }
  for (auto& e : stats.catalog) e.frequency = static_cast<double>(e.count) / static_cast<double>(stats.centers);
  std::ostringstream os;
  os.precision(17);
  os << "centers |x| <= " << stats.center_radius << ", rho = " << rho << ", core = " << set.core_radius;
  stats.window_descriptor = os.str();
  return stats;
}

double max_frequency_difference(const PatchStats& a, const PatchStats& b) {
  double worst = 0;
  for (const auto& e : a.catalog) worst = std::max(worst, std::abs(e.frequency - b.frequency_of(e.patch)));
  for (const auto& e : b.catalog) worst = std::max(worst, std::abs(e.frequency - a.frequency_of(e.patch)));
  return worst;
}

std::vector<GroupElem> patch_difference_violations(const PointSet& set, const PatchStats& stats) {
  const double K = compose_bound(set.ambient, inverse_bound(set.ambient, stats.rho), stats.rho);
  PointIndex index(set);
  std::unordered_set<GroupElem> diffs;
  for (const auto& a : set.core_points()) {
    const GroupElem ai = inverse(a);
    for (std::size_t i : index.ball(a, K)) diffs.insert(mul(ai, set.points[i]));
  }
  std::vector<GroupElem> bad;
  for (const auto& e : stats.catalog) {
    for (const auto& p : e.patch.points) {
      const GroupElem pi = inverse(p);
      for (const auto& q : e.patch.points) {
        GroupElem dq = mul(pi, q);
        if (!diffs.count(dq)) bad.push_back(std::move(dq));
      }
    }
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

std::string_view bump_profile_name(BumpProfile p) noexcept {
  return p == BumpProfile::Triangle ? "triangle" : "indicator-smoothed";
}

BumpProfile bump_profile_from_name(std::string_view name) {
  if (name == "triangle") return BumpProfile::Triangle;
  if (name == "indicator-smoothed") return BumpProfile::SmoothedIndicator;
  throw InvalidArgument("unknown bump profile '" + std::string(name) + "'");
}

namespace {

double profile_value(const Bump& b, double r) {
  const double u = r / b.radius;
  if (u >= 1) return 0;
  if (b.profile == BumpProfile::Triangle) return b.height * (1 - u);
  if (u <= b.plateau) return b.height;
  return b.height * (1 - u) / (1 - b.plateau);
}

Coords origin() { return Coords{0, 0, 0}; }

}  // namespace

double TestFunction::operator()(const Coords& x) const {
  double s = 0;
  for (const auto& b : bumps) s += profile_value(b, float_distance(ambient, b.center, x));
  return s;
}

double TestFunction::operator()(const GroupElem& x) const { return (*this)(embed(x)); }

double TestFunction::support_radius() const {
  double r = 0;
  for (const auto& b : bumps) r = std::max(r, compose_bound(ambient, float_norm(ambient, b.center), b.radius));
  return r;
}

double TestFunction::sup_bound() const {
  double s = 0;
  for (const auto& b : bumps) s += std::abs(b.height);
  return s;
}

bool TestFunction::nonnegative() const {
  return std::all_of(bumps.begin(), bumps.end(), [](const Bump& b) { return b.height >= 0; });
}

TestFunction TestFunction::left_translate(const Coords& g) const {
  TestFunction out = *this;
  const Coords gi = float_inverse(ambient, g);
  for (auto& b : out.bumps) b.center = float_mul(ambient, gi, b.center);
  return out;
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
  if (other.ambient != ambient) throw InvalidArgument("test functions live on different groups");
  TestFunction out = *this;
  out.bumps.insert(out.bumps.end(), other.bumps.begin(), other.bumps.end());
  return out;
}

void TestFunction::validate() const {
  for (const auto& b : bumps) {
    if (!(b.radius > 0) || !std::isfinite(b.radius)) throw InvalidArgument("bump radius must be positive and finite");
    if (!std::isfinite(b.height)) throw InvalidArgument("bump height must be finite");
    if (b.profile == BumpProfile::SmoothedIndicator && !(b.plateau >= 0 && b.plateau < 1))
      throw InvalidArgument("bump plateau must lie in [0, 1)");
    for (double c : b.center)
      if (!std::isfinite(c)) throw InvalidArgument("bump center must be finite");
  }
}

Coords float_mul(Ambient ambient, const Coords& g, const Coords& h) {
  Coords r{g[0] + h[0], g[1] + h[1], g[2] + h[2]};
  if (ambient == Ambient::Heisenberg) r[2] += g[0] * h[1];
  return r;
}

Coords float_inverse(Ambient ambient, const Coords& g) {
  Coords r{-g[0], -g[1], -g[2]};
  if (ambient == Ambient::Heisenberg) r[2] += g[0] * g[1];
  return r;
}

namespace {

bool abelian(Ambient a) { return a != Ambient::Heisenberg; }

/// Indices of the points x for which f(g x t) may be nonzero; throws
/// CoreViolation if such x could leave the core.
std::vector<std::size_t> contributors(const TestFunction& f, const PointSet& set, const PointIndex& index,
                                      const Coords& g, const GroupElem& t) {
  const Ambient amb = set.ambient;
  const Coords te = embed(t);
  std::vector<std::size_t> out;
  if (abelian(amb)) {
    for (const auto& b : f.bumps) {
      const Coords c{b.center[0] - g[0] - te[0], b.center[1] - g[1] - te[1], 0};
      if (float_norm(amb, c) + b.radius > set.core_radius)
        throw CoreViolation("periodization support leaves the core radius " + std::to_string(set.core_radius));
      auto part = index.ball(c, b.radius * (1 + 1e-12) + 1e-12);
      out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    const double reach = compose_bound(amb, compose_bound(amb, inverse_bound(amb, float_norm(amb, g)), f.support_radius()),
                                       inverse_bound(amb, norm(t)));
    if (reach > set.core_radius)
      throw CoreViolation("periodization support leaves the core radius " + std::to_string(set.core_radius));
    out = index.ball(origin(), reach);
  }
  return out;
}

double right_sum(const TestFunction& f, const PointSet& set, const PointIndex& index, const Coords& g,
                 const GroupElem& t) {
  double s = 0;
  const bool trivial = is_identity(t);
  for (std::size_t i : contributors(f, set, index, g, t)) {
    const Coords x = embed(trivial ? set.points[i] : mul(set.points[i], t));
    s += f(float_mul(set.ambient, g, x));
  }
  return s;
}

void check_function(const TestFunction& f, const PointSet& set) {
  f.validate();
  if (f.ambient != set.ambient) throw InvalidArgument("test function and point set live on different groups");
}

}  // namespace

std::vector<double> periodize(const TestFunction& f, const PointSet& set, const std::vector<Coords>& translates) {
  check_function(f, set);
  PointIndex index(set);
  const GroupElem e = set.identity();
  std::vector<double> out;
  out.reserve(translates.size());
  for (const auto& g : translates) out.push_back(right_sum(f, set, index, g, e));
  return out;
}

double periodize_right(const TestFunction& f, const PointSet& set, const Coords& g, const GroupElem& t) {
  check_function(f, set);
  PointIndex index(set);
  return right_sum(f, set, index, g, t);
}

UnimodularityReport unimodularity_inequality_check(const PointSet& set, const std::vector<GroupElem>& F,
                                                   double verified_radius, const TestFunction& f,
                                                   const std::vector<GroupElem>& ts,
                                                   const std::vector<Coords>& gs, double tolerance) {
  check_function(f, set);
  if (!f.nonnegative()) throw InvalidArgument("unimodularity check needs f >= 0");
  if (F.empty()) throw InvalidArgument("unimodularity check needs a nonempty F");
  const Ambient amb = set.ambient;
  PointIndex index(set);
  std::vector<GroupElem> right;
  for (const auto& c : F) right.push_back(inverse(c));

  UnimodularityReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.max_slack = -std::numeric_limits<double>::infinity();
  for (const auto& t : ts) {
    if (!set.contains(t)) throw InvalidArgument("right multiplier " + to_string(t) + " is not in the set");
    if (inverse_bound(amb, norm(t)) > verified_radius)
      throw CoreViolation("right multiplier " + to_string(t) + " exceeds the verified witness radius");
    for (const auto& g : gs) {
      const double reach = compose_bound(
          amb, compose_bound(amb, inverse_bound(amb, float_norm(amb, g)), f.support_radius()),
          inverse_bound(amb, norm(t)));
      if (inverse_bound(amb, reach) > verified_radius)
        throw CoreViolation("products x t at translate leave the verified witness radius");
      const double lhs = right_sum(f, set, index, g, t);
      double rhs = 0;
      for (const auto& c : right) rhs += right_sum(f, set, index, g, c);
      ++rep.samples;
      const double slack = rhs - lhs;
      rep.min_slack = std::min(rep.min_slack, slack);
      rep.max_slack = std::max(rep.max_slack, slack);
      if (slack < -tolerance * (1 + std::abs(rhs))) {
        ++rep.violations;
        if (!rep.first_violation) rep.first_violation = UnimodularitySample{g, t, lhs, rhs};
      }
    }
  }
  if (rep.samples == 0) rep.min_slack = rep.max_slack = 0;
  return rep;
}

namespace {

std::vector<Coords> grid_in_ball(Ambient amb, const Coords& center, double radius, double step) {
  const int dims = amb == Ambient::Line ? 1 : amb == Ambient::Plane ? 2 : 3;
  const auto n = static_cast<std::int64_t>(std::floor(radius / step + 1e-9));
  std::vector<Coords> out;
  for (std::int64_t i = -n; i <= n; ++i)
    for (std::int64_t j = dims >= 2 ? -n : 0; j <= (dims >= 2 ? n : 0); ++j)
      for (std::int64_t k = dims >= 3 ? -n : 0; k <= (dims >= 3 ? n : 0); ++k) {
        const Coords off{static_cast<double>(i) * step, static_cast<double>(j) * step, static_cast<double>(k) * step};
        if (float_norm(amb, off) > radius) continue;
        out.push_back(float_mul(amb, center, off));
      }
  return out;
}

}  // namespace

std::vector<WindowAverage> ergodic_average(const PointSet& set, const TestFunction& f, const WindowFamily& windows) {
  check_function(f, set);
  if (windows.radii.empty()) throw InvalidArgument("ergodic_average needs at least one window");
  for (std::size_t i = 0; i < windows.radii.size(); ++i) {
    if (!(windows.radii[i] > 0)) throw InvalidArgument("window radii must be positive");
    if (i > 0 && !(windows.radii[i] > windows.radii[i - 1])) throw InvalidArgument("windows must be nested");
  }
  if (windows.mode == AverageMode::Grid && !(windows.grid_step > 0))
    throw InvalidArgument("grid step must be positive");
  const Ambient amb = set.ambient;
  const double outer = compose_bound(amb, float_norm(amb, windows.center), windows.radii.back());
  if (outer > set.core_radius) throw CoreViolation("outermost window leaves the core");

  PointIndex index(set);
  const GroupElem e = set.identity();
  std::vector<WindowAverage> out;
  for (double r : windows.radii) {
    std::vector<Coords> translates;
    if (windows.mode == AverageMode::LatticePoints) {
      for (std::size_t i : index.ball(windows.center, r)) translates.push_back(embed(inverse(set.points[i])));
    } else {
      translates = grid_in_ball(amb, windows.center, r, windows.grid_step);
    }
    if (translates.empty()) throw InvalidArgument("window of radius " + std::to_string(r) + " has no translates");
    double s = 0;
    for (const auto& g : translates) s += right_sum(f, set, index, g, e);
    out.push_back(WindowAverage{windows.center, r, translates.size(), s / static_cast<double>(translates.size())});
  }
  return out;
}

TestFunction gap_two_detector() {
  Bump b;
  b.center = Coords{2, 0, 0};
  b.radius = 0.5;
  return TestFunction::bump(Ambient::Line, b);
}

namespace {

std::vector<std::int64_t> first_primes(std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 2; out.size() < n; ++c) {
    bool prime = true;
    for (auto p : out) {
      if (p * p > c) break;
      if (c % p == 0) { prime = false; break; }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

/// Least positive x with x = r_i mod m_i for pairwise coprime m_i.
std::int64_t crt(const std::vector<std::pair<std::int64_t, std::int64_t>>& congruences) {
  int128 x = 0, M = 1;
  for (auto [r, m] : congruences) {
    const int128 target = ((r % m) + m) % m;
    // Step x by M until it hits the residue; m is small, so a scan suffices.
    const int128 mm = M % m;
    int128 cur = x % m;
    std::int64_t steps = 0;
    while (cur != target) {
      cur = (cur + mm) % m;
      if (++steps > m) throw InvalidArgument("crt: moduli are not coprime");
    }
    x += M * steps;
    M *= m;
  }
  if (x == 0) x = M;
  if (x > std::numeric_limits<std::int64_t>::max()) throw OverflowError("crt solution exceeds int64");
  return static_cast<std::int64_t>(x);
}

}  // namespace

VisibleHole visible_hole(int k) {
  if (k < 1 || k > 3) throw InvalidArgument("visible_hole supports 1 <= k <= 3");
  const auto primes = first_primes(static_cast<std::size_t>(k * k));
  auto p = [&](int i, int j) { return primes[static_cast<std::size_t>(i * k + j)]; };
  std::vector<std::pair<std::int64_t, std::int64_t>> cx, cy;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cx.emplace_back(-i, p(i, j));
      cy.emplace_back(-j, p(i, j));
    }
  VisibleHole h;
  h.k = k;
  h.x = crt(cx);
  h.y = crt(cy);
  const double half = (k - 1) / 2.0;
  h.center = Coords{static_cast<double>(h.x) + half, static_cast<double>(h.y) + half, 0};
  h.radius = (k + 1) / 2.0;
  h.verified = true;
  for (std::int64_t a = h.x - k; a <= h.x + 2 * k; ++a)
    for (std::int64_t b = h.y - k; b <= h.y + 2 * k; ++b) {
      const double da = static_cast<double>(a - h.x) - half, db = static_cast<double>(b - h.y) - half;
      if (std::hypot(da, db) >= h.radius) continue;
      if (gcd_abs(a, b) == 1) h.verified = false;
    }
  return h;
}

}  // namespace alat
