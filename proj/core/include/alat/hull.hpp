#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alat/patch.hpp"
#include "alat/point_set.hpp"

namespace alat {

struct PatchFrequency {
  Patch patch;
  std::size_t count = 0;
  double frequency = 0;
};

/// Empirical patch statistics over the centers x of the core whose rho-ball
/// stays inside the core.
struct PatchStats {
  std::vector<PatchFrequency> catalog;  ///< canonical patch order
  double rho = 0;
  double center_radius = 0;
  std::size_t centers = 0;
  std::string window_descriptor;

  /// Frequency of a patch, 0 when absent.
  double frequency_of(const Patch& p) const;
};

PatchStats transversal_stats(const PointSet& set, double rho);

/// Largest difference in frequency over the union of both catalogs.
double max_frequency_difference(const PatchStats& a, const PatchStats& b);

/// Every difference of two points in a catalog patch is checked for
/// membership in Lambda^-1 Lambda as enumerated from the fragment. Returns
/// the offending differences.
std::vector<GroupElem> patch_difference_violations(const PointSet& set, const PatchStats& stats);

enum class BumpProfile { Triangle, SmoothedIndicator };

std::string_view bump_profile_name(BumpProfile p) noexcept;
BumpProfile bump_profile_from_name(std::string_view name);

/// phi(d(center, x) / radius) scaled by height, where phi is 1 - r on [0, 1]
/// for the triangle and equals 1 up to `plateau` then falls linearly to 0 at
/// 1 for the smoothed indicator.
struct Bump {
  Coords center{};
  double radius = 1;
  double height = 1;
  BumpProfile profile = BumpProfile::Triangle;
  double plateau = 0.5;
};

/// Finite sum of bumps on one ambient group.
struct TestFunction {
  Ambient ambient = Ambient::Line;
  std::vector<Bump> bumps;

  static TestFunction bump(Ambient ambient, const Bump& b) { return TestFunction{ambient, {b}}; }

  double operator()(const Coords& x) const;
  double operator()(const GroupElem& x) const;
  /// Radius of a ball about the identity containing the support.
  double support_radius() const;
  /// Sum of |height|, an upper bound on max |f|.
  double sup_bound() const;
  bool nonnegative() const;
  /// x -> f(g x).
  TestFunction left_translate(const Coords& g) const;
  TestFunction operator+(const TestFunction& other) const;
  void validate() const;
};

/// Group law on real coordinates of an ambient group.
Coords float_mul(Ambient ambient, const Coords& g, const Coords& h);
Coords float_inverse(Ambient ambient, const Coords& g);

/// Sum over x in the set of f(g x), for each translate g. Throws CoreViolation
/// if some contributing x could lie outside the core.
std::vector<double> periodize(const TestFunction& f, const PointSet& set, const std::vector<Coords>& translates);

/// Sum over x in the set of f(g x t), for the right multiplier t.
double periodize_right(const TestFunction& f, const PointSet& set, const Coords& g, const GroupElem& t);

struct UnimodularitySample {
  Coords g{};
  GroupElem t;
  double lhs = 0;
  double rhs = 0;
};

struct UnimodularityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0;  ///< min of rhs - lhs
  double max_slack = 0;
  std::optional<UnimodularitySample> first_violation;
  bool holds() const noexcept { return violations == 0; }
};

/// Checks P(f.t)(g) <= sum over c of P(f.c)(g) at every (g, t), with
/// (f.t)(x) = f(x t) and c ranging over F^-1 (so that a witness with
/// Lambda^2 in F Lambda gives Lambda^2 in Lambda F^-1). `verified_radius` is
/// the radius up to which the witness was verified; products that leave it,
/// or sums that leave the core, raise CoreViolation.
UnimodularityReport unimodularity_inequality_check(const PointSet& set, const std::vector<GroupElem>& F,
                                                   double verified_radius, const TestFunction& f,
                                                   const std::vector<GroupElem>& ts,
                                                   const std::vector<Coords>& gs, double tolerance = 1e-12);

enum class AverageMode { LatticePoints, Grid };

/// Nested balls about a pinned center. LatticePoints averages P f over the
/// hull points x^-1 Lambda for x in the set and the ball; Grid averages over
/// translates on a square grid of step `grid_step` inside the ball.
struct WindowFamily {
  Coords center{};
  std::vector<double> radii;
  AverageMode mode = AverageMode::LatticePoints;
  double grid_step = 0.25;
};

struct WindowAverage {
  Coords center{};
  double radius = 0;
  std::size_t translates = 0;
  double average = 0;
};

std::vector<WindowAverage> ergodic_average(const PointSet& set, const TestFunction& f, const WindowFamily& windows);

/// Bump of height 1 at distance 2 to the right: P f(x^-1 Lambda) = 1 exactly
/// when x + 2 is in an integer set.
TestFunction gap_two_detector();

struct VisibleHole {
  std::int64_t x = 0;  ///< lower-left corner of a k x k block of invisible points
  std::int64_t y = 0;
  int k = 0;
  Coords center{};
  double radius = 0;   ///< open ball about center free of visible points
  bool verified = false;
};

/// k x k block of lattice points sharing a factor with the origin, built by
/// the Chinese remainder theorem from k^2 distinct primes, then checked by
/// direct gcd evaluation. Supports k <= 3.
VisibleHole visible_hole(int k);

}  // namespace alat
