#pragma once

#include <array>
#include <string_view>

#include "alat/group.hpp"

namespace alat {

/// Ambient groups that carry enumerated point sets.
enum class Ambient { Line, Plane, Heisenberg };

std::string_view ambient_name(Ambient a) noexcept;
Ambient ambient_from_name(std::string_view name);
Ambient ambient_of(const GroupElem& g);

/// Real embedding of an exact element (unused trailing entries are 0).
using Coords = std::array<double, 3>;

Coords embed(const GroupElem& g);

/// d(e, g). Euclidean length on R^n; on the Heisenberg group the maximum of
/// the absolute coordinates, which is a left-invariant quasi-metric.
double norm(const GroupElem& g);

/// d(g, h) = norm(g^-1 h).
double distance(const GroupElem& g, const GroupElem& h);

/// Same quantities for real (possibly non-lattice) points.
double float_norm(Ambient ambient, const Coords& g);
double float_distance(Ambient ambient, const Coords& g, const Coords& h);

/// Upper bound on norm(g h) given norm(g) <= a and norm(h) <= b.
double compose_bound(Ambient ambient, double a, double b) noexcept;
/// Upper bound on norm(g^-1) given norm(g) <= a.
double inverse_bound(Ambient ambient, double a) noexcept;

/// Largest r with compose_bound(r, b) <= total (may be negative).
double compose_slack(Ambient ambient, double total, double b) noexcept;

}  // namespace alat
