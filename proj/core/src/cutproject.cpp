#include "alat/cutproject.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "alat/error.hpp"

namespace alat {

namespace {

thread_local std::size_t g_rejections = 0;

std::vector<QuadInt> coordinates_of(const GroupElem& x) {
  if (const auto* e = std::get_if<EuclidElem>(&x))
    return std::vector<QuadInt>(e->coords.begin(), e->coords.begin() + e->dim);
  if (const auto* h = std::get_if<HeisElem>(&x)) return {h->x, h->y, h->z};
  throw InvalidArgument("element " + to_string(x) + " is not a lattice element of a scheme");
}

void require_lattice_element(const Scheme& scheme, const GroupElem& x) {
  const bool heis = std::holds_alternative<HeisElem>(x);
  if (heis != (scheme.family == SchemeFamily::HeisQuadratic) ||
      (!heis && std::get<EuclidElem>(x).dim != scheme.internal_dim())) {
    throw InvalidArgument("element " + to_string(x) + " does not belong to Gamma of scheme " +
                          std::string(scheme_family_name(scheme.family)));
  }
  for (const auto& c : coordinates_of(x)) {
    if (c.d() != scheme.d)
      throw RingMismatch("element " + to_string(x) + " is not in Z[sqrt(" +
                         std::to_string(scheme.d) + ")]");
  }
}

bool integral_endpoint(double v) noexcept {
  return std::trunc(v) == v && std::abs(v) < 9e15;
}

/// Sign of x* - v, or 0 with ambiguous=true inside the guard band.
int compare_conjugate(const QuadInt& x, double v, bool& ambiguous) {
  if (integral_endpoint(v)) return compare_with_integer(x, static_cast<std::int64_t>(v), true);
  const long double diff = x.conj_embedding_ld() - static_cast<long double>(v);
  if (std::abs(diff) <= 1e-12L * (1 + std::abs(static_cast<long double>(v)))) {
    ambiguous = true;
    return 0;
  }
  return (diff > 0) - (diff < 0);
}

bool conj_in_interval(const QuadInt& x, const Interval& iv, bool& ambiguous) {
  bool amb = false;
  const int lo = compare_conjugate(x, iv.lo, amb);
  const int hi = compare_conjugate(x, iv.hi, amb);
  if (amb) {
    ambiguous = true;
    return false;
  }
  return lo >= 0 && hi <= 0;
}

}  // namespace

Coords star_map(const Scheme& scheme, const GroupElem& x) {
  require_lattice_element(scheme, x);
  Coords out{0, 0, 0};
  const auto cs = coordinates_of(x);
  for (std::size_t i = 0; i < cs.size(); ++i) out[i] = cs[i].conj_embedding();
  return out;
}

GroupElem star_exact(const Scheme& scheme, const GroupElem& x) {
  require_lattice_element(scheme, x);
  if (const auto* h = std::get_if<HeisElem>(&x))
    return HeisElem{h->x.conjugate(), h->y.conjugate(), h->z.conjugate()};
  EuclidElem e = std::get<EuclidElem>(x);
  for (std::size_t i = 0; i < e.dim; ++i) e.coords[i] = e.coords[i].conjugate();
  return e;
}

Membership window_membership(const Scheme& scheme, const GroupElem& x) {
  require_lattice_element(scheme, x);
  const auto cs = coordinates_of(x);
  Membership m{true, false};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool amb = false;
    QuadInt c = cs[i];
    Interval iv = scheme.window.intervals[i];
    if (i == 2 && scheme.family == SchemeFamily::HeisQuadratic) {
      // Central coordinate z - xy/2, doubled to stay in the ring.
      c = cs[2] + cs[2] - cs[0] * cs[1];
      iv = Interval{2 * iv.lo, 2 * iv.hi};
    }
    if (!conj_in_interval(c, iv, amb)) {
      m.inside = false;
      m.ambiguous = m.ambiguous || amb;
    }
  }
  return m;
}

std::vector<QuadInt> line_points(std::int64_t d, double radius, const Interval& window,
                                 const EnumerateLimits& limits) {
  if (!(radius > 0)) throw InvalidArgument("enumeration radius must be positive");
  const long double s = std::sqrt(static_cast<long double>(d));
  const long double R = radius;
  // |a + b s| <= R and lo <= a - b s <= hi.
  const long double b_lo = std::floor((-R - window.hi) / (2 * s)) - 1;
  const long double b_hi = std::ceil((R - window.lo) / (2 * s)) + 1;
  const long double cap = static_cast<long double>(limits.max_coefficient);
  if (std::abs(b_lo) > cap || std::abs(b_hi) > cap || R + std::abs(window.lo) + std::abs(window.hi) > cap)
    throw BudgetExceeded("coefficient range exceeds the configured limit of " +
                         std::to_string(limits.max_coefficient));
  std::vector<QuadInt> out;
  for (auto b = static_cast<std::int64_t>(b_lo); b <= static_cast<std::int64_t>(b_hi); ++b) {
    const long double bs = b * s;
    const long double a_min = std::max(-R - bs, window.lo + bs);
    const long double a_max = std::min(R - bs, window.hi + bs);
    if (a_min > a_max + 2) continue;
    for (auto a = static_cast<std::int64_t>(std::floor(a_min)) - 1;
         a <= static_cast<std::int64_t>(std::ceil(a_max)) + 1; ++a) {
      const QuadInt x(a, b, d);
      if (std::abs(x.embedding()) > radius) continue;
      bool amb = false;
      if (conj_in_interval(x, window, amb)) {
        out.push_back(x);
        if (out.size() > limits.max_points)
          throw BudgetExceeded("enumeration exceeds " + std::to_string(limits.max_points) + " points");
      } else if (amb) {
        ++g_rejections;
      }
    }
  }
  return out;
}

std::size_t last_enumerate_rejections() noexcept { return g_rejections; }

PointSet enumerate(const Scheme& scheme, double radius, const EnumerateLimits& limits) {
  scheme.validate();
  if (!(radius > 0)) throw InvalidArgument("enumeration radius must be positive");
  g_rejections = 0;
  PointSet p;
  p.ambient = scheme.ambient();
  p.d = scheme.d;
  p.enum_radius = radius;
  p.core_radius = radius;
  p.scheme = scheme;
  p.provenance["generator"] = "enumerate";
  p.provenance["family"] = std::string(scheme_family_name(scheme.family));
  p.provenance["d"] = std::to_string(scheme.d);
  p.provenance["window"] = scheme.window.to_string();

  const auto& w = scheme.window.intervals;
  switch (scheme.family) {
    case SchemeFamily::QuadraticLine: {
      p.family = Family::QuadLine;
      for (const auto& x : line_points(scheme.d, radius, w[0], limits)) p.points.push_back(EuclidElem::line(x));
      break;
    }
    case SchemeFamily::QuadraticPlane: {
      p.family = Family::QuadPlane;
      const auto xs = line_points(scheme.d, radius, w[0], limits);
      const auto ys = line_points(scheme.d, radius, w[1], limits);
      if (xs.size() * ys.size() > limits.max_points * 4)
        throw BudgetExceeded("plane enumeration exceeds the point budget");
      for (const auto& x : xs) {
        for (const auto& y : ys) {
          GroupElem g = EuclidElem::plane(x, y);
          if (norm(g) <= radius) p.points.push_back(std::move(g));
        }
      }
      break;
    }
    case SchemeFamily::HeisQuadratic: {
      p.family = Family::HeisQuad;
      const auto xs = line_points(scheme.d, radius, w[0], limits);
      const auto ys = line_points(scheme.d, radius, w[1], limits);
      for (const auto& x : xs) {
        for (const auto& y : ys) {
          const double shift = x.conj_embedding() * y.conj_embedding() / 2;
          const Interval zw{w[2].lo + shift - 1e-9, w[2].hi + shift + 1e-9};
          for (const auto& z : line_points(scheme.d, radius, zw, limits)) {
            HeisElem g{x, y, z};
            const Membership m = window_membership(scheme, g);
            if (m.inside) {
              p.points.push_back(std::move(g));
            } else if (m.ambiguous) {
              ++g_rejections;
            }
          }
          if (p.points.size() > limits.max_points)
            throw BudgetExceeded("Heisenberg enumeration exceeds the point budget");
        }
      }
      break;
    }
  }
  p.canonicalize();
  return p;
}

std::int64_t gcd_abs(std::int64_t x, std::int64_t y) noexcept {
  return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
}

PointSet visible_points(std::int64_t n) {
  if (n < 1) throw InvalidArgument("visible_points needs N >= 1");
  PointSet p;
  p.family = Family::Visible;
  p.ambient = Ambient::Plane;
  p.enum_radius = static_cast<double>(n);
  p.core_radius = static_cast<double>(n);
  p.provenance["generator"] = "visible_points";
  p.provenance["N"] = std::to_string(n);
  for (std::int64_t x = -n; x <= n; ++x)
    for (std::int64_t y = -n; y <= n; ++y)
      if (gcd_abs(x, y) == 1) p.points.push_back(EuclidElem::plane(QuadInt(x, 0, 2), QuadInt(y, 0, 2)));
  p.canonicalize();
  return p;
}

std::vector<std::int64_t> fish_gaps(std::int64_t n_blocks) {
  if (n_blocks < 1) throw InvalidArgument("fish_set needs nBlocks >= 1");
  std::vector<std::int64_t> gaps;
  for (std::int64_t i = 1; i <= n_blocks; ++i) {
    gaps.insert(gaps.end(), static_cast<std::size_t>(i), 2);
    gaps.insert(gaps.end(), static_cast<std::size_t>(i), 3);
  }
  return gaps;
}

PointSet fish_set(std::int64_t n_blocks) {
  const auto gaps = fish_gaps(n_blocks);
  std::vector<std::int64_t> values{0};
  std::int64_t s = 0;
  for (auto g : gaps) {
    s += g;
    values.push_back(s);
    values.push_back(-s);
  }
  PointSet p = integer_point_set(values, static_cast<double>(s), Family::Fish);
  p.provenance.clear();
  p.provenance["generator"] = "fish_set";
  p.provenance["nBlocks"] = std::to_string(n_blocks);
  return p;
}

namespace {

std::vector<QuadInt> cover_line(std::int64_t d, const Interval& w, const Interval& target,
                                double search_radius) {
  if (target.lo >= w.lo && target.hi <= w.hi) return {QuadInt(0, 0, d)};
  const Interval shifts{target.lo - w.hi, target.hi - w.lo};
  auto candidates = line_points(d, search_radius, shifts);
  // Prefer small physical norm, then canonical order, among equal reach.
  std::sort(candidates.begin(), candidates.end(), [](const QuadInt& a, const QuadInt& b) {
    const double na = std::abs(a.embedding());
    const double nb = std::abs(b.embedding());
    if (na != nb) return na < nb;
    return a < b;
  });
  std::vector<QuadInt> chosen;
  double reach = target.lo;
  bool first = true;
  while (first || reach < target.hi) {
    first = false;
    const QuadInt* best = nullptr;
    double best_reach = reach;
    for (const auto& c : candidates) {
      const double t = c.conj_embedding();
      if (t + w.lo <= reach && t + w.hi > best_reach) {
        best = &c;
        best_reach = t + w.hi;
      }
    }
    if (best == nullptr)
      throw BudgetExceeded("window cover not found among candidates of norm <= " +
                           std::to_string(search_radius) + " (search budget exhausted)");
    chosen.push_back(*best);
    reach = best_reach;
  }
  return chosen;
}

}  // namespace

std::vector<GroupElem> window_cover(const Scheme& scheme, const Window& target, double search_radius) {
  scheme.validate();
  target.validate();
  if (target.dim() != scheme.internal_dim()) throw InvalidArgument("target window dimension mismatch");
  std::vector<GroupElem> cover;
  switch (scheme.family) {
    case SchemeFamily::QuadraticLine:
      for (const auto& x : cover_line(scheme.d, scheme.window.intervals[0], target.intervals[0], search_radius))
        cover.push_back(EuclidElem::line(x));
      break;
    case SchemeFamily::QuadraticPlane: {
      const auto xs = cover_line(scheme.d, scheme.window.intervals[0], target.intervals[0], search_radius);
      const auto ys = cover_line(scheme.d, scheme.window.intervals[1], target.intervals[1], search_radius);
      for (const auto& x : xs)
        for (const auto& y : ys) cover.push_back(EuclidElem::plane(x, y));
      break;
    }
    case SchemeFamily::HeisQuadratic:
      throw InvalidArgument("window_cover supports additive families only");
  }
  std::sort(cover.begin(), cover.end());
  if (!covers_window(scheme, cover, target))
    throw VerificationFailure("internal error: constructed window cover failed verification");
  return cover;
}

bool covers_window(const Scheme& scheme, const std::vector<GroupElem>& cover, const Window& target) {
  if (scheme.family == SchemeFamily::HeisQuadratic) return false;
  // A box is covered by a union of boxes iff every cell of the grid induced by
  // all box edges is; the sample point of each cell is its midpoint, and cell
  // edges themselves are covered by closedness.
  const std::size_t dim = scheme.internal_dim();
  std::vector<std::vector<double>> cuts(dim);
  std::vector<Coords> centers;
  for (const auto& f : cover) centers.push_back(star_map(scheme, f));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& w = scheme.window.intervals[i];
    const auto& t = target.intervals[i];
    cuts[i] = {t.lo, t.hi};
    for (const auto& c : centers) {
      for (double e : {c[i] + w.lo, c[i] + w.hi})
        if (e > t.lo && e < t.hi) cuts[i].push_back(e);
    }
    std::sort(cuts[i].begin(), cuts[i].end());
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
  }
  constexpr double tol = 1e-12;
  auto covered = [&](const Coords& pt) {
    for (const auto& c : centers) {
      bool in = true;
      for (std::size_t i = 0; i < dim && in; ++i) {
        const auto& w = scheme.window.intervals[i];
        in = pt[i] >= c[i] + w.lo - tol && pt[i] <= c[i] + w.hi + tol;
      }
      if (in) return true;
    }
    return false;
  };
  // Cell midpoints and all cut points (vertices/edges) of the induced grid.
  std::vector<std::vector<double>> samples(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < cuts[i].size(); ++j) {
      samples[i].push_back(cuts[i][j]);
      if (j + 1 < cuts[i].size()) samples[i].push_back((cuts[i][j] + cuts[i][j + 1]) / 2);
    }
  }
  std::vector<std::size_t> idx(dim, 0);
  for (;;) {
    Coords pt{0, 0, 0};
    for (std::size_t i = 0; i < dim; ++i) pt[i] = samples[i][idx[i]];
    if (!covered(pt)) return false;
    std::size_t i = 0;
    while (i < dim && ++idx[i] == samples[i].size()) idx[i++] = 0;
    if (i == dim) break;
  }
  return true;
}

SumsetCoverReport visible_sumset_cover(std::int64_t n, std::int64_t half) {
  if (half < 0 || 2 * half > 2 * n) throw InvalidArgument("sumset target box must fit in the source box");
  // Candidate summands ordered by size so typical searches stop early.
  std::vector<std::pair<std::int64_t, std::int64_t>> vis;
  for (std::int64_t x = -n; x <= n; ++x)
    for (std::int64_t y = -n; y <= n; ++y)
      if (gcd_abs(x, y) == 1) vis.emplace_back(x, y);
  std::stable_sort(vis.begin(), vis.end(), [](const auto& a, const auto& b) {
    return a.first * a.first + a.second * a.second < b.first * b.first + b.second * b.second;
  });
  SumsetCoverReport rep;
  for (std::int64_t x = -half; x <= half; ++x) {
    for (std::int64_t y = -half; y <= half; ++y) {
      ++rep.targets;
      bool found = false;
      for (const auto& [vx, vy] : vis) {
        const std::int64_t rx = x - vx;
        const std::int64_t ry = y - vy;
        if (std::abs(rx) <= n && std::abs(ry) <= n && gcd_abs(rx, ry) == 1) {
          found = true;
          break;
        }
      }
      if (found) ++rep.covered;
      else if (!rep.first_miss) rep.first_miss = std::make_pair(x, y);
    }
  }
  return rep;
}

}  // namespace alat
