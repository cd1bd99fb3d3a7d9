#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "alat/point_set.hpp"

namespace alat {

/// Image of a lattice element under the star map tau (Galois conjugation,
/// coordinatewise). Euclidean families give a real vector; the Heisenberg
/// family gives the conjugated triple.
Coords star_map(const Scheme& scheme, const GroupElem& x);

/// Exact conjugate element (x*, ...) in the same ring; tau as a group
/// homomorphism Gamma_G -> Gamma_H.
GroupElem star_exact(const Scheme& scheme, const GroupElem& x);

/// Outcome of the window test. `ambiguous` flags points whose conjugate lies
/// within the 1e-12 guard band of a non-integer window endpoint; such points
/// are treated as outside.
struct Membership {
  bool inside = false;
  bool ambiguous = false;
};

/// For the Heisenberg family the window box is read in the coordinates
/// (x*, y*, z* - x*y*/2), so a symmetric box gives a symmetric set.
Membership window_membership(const Scheme& scheme, const GroupElem& x);

struct EnumerateLimits {
  std::int64_t max_coefficient = 1'000'000'000;
  std::size_t max_points = 20'000'000;
};

/// All gamma with d(e, gamma) <= radius and tau(gamma) in the window.
PointSet enumerate(const Scheme& scheme, double radius, const EnumerateLimits& limits = {});

/// Number of boundary-ambiguous points rejected by the last enumerate() call
/// on this thread.
std::size_t last_enumerate_rejections() noexcept;

/// Points of Z[sqrt(d)] with |x| <= radius and lo <= x* <= hi.
std::vector<QuadInt> line_points(std::int64_t d, double radius, const Interval& window,
                                 const EnumerateLimits& limits = {});

/// Visible lattice points {(x, y) : gcd(|x|, |y|) = 1} in the box [-n, n]^2.
PointSet visible_points(std::int64_t n);

/// gcd with gcd(0, k) = k.
std::int64_t gcd_abs(std::int64_t x, std::int64_t y) noexcept;

/// Gap sequence of the Fish set: block i contributes i twos then i threes.
std::vector<std::int64_t> fish_gaps(std::int64_t n_blocks);

/// {+-(x_1 + ... + x_n) : n >= 0} for the generated gap prefix.
PointSet fish_set(std::int64_t n_blocks);

/// Additive families only: finite F in Gamma_G with target covered by the
/// closed translates tau(f) + W. Throws BudgetExceeded when no cover is found
/// among candidates of norm <= search_radius.
std::vector<GroupElem> window_cover(const Scheme& scheme, const Window& target,
                                    double search_radius = 50.0);

/// Independent check that the translates tau(f) + W cover target.
bool covers_window(const Scheme& scheme, const std::vector<GroupElem>& cover,
                   const Window& target);

/// Result of the exhaustive V + V coverage test.
struct SumsetCoverReport {
  std::size_t targets = 0;
  std::size_t covered = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> first_miss;
  bool complete() const noexcept { return covered == targets; }
};

/// Checks that every point of [-half, half]^2 is a sum of two visible points
/// taken from the box [-n, n]^2.
SumsetCoverReport visible_sumset_cover(std::int64_t n, std::int64_t half);

}  // namespace alat
