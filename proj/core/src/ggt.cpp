#include "alat/ggt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "alat/bfs.hpp"
#include "alat/error.hpp"
#include "alat/point_index.hpp"

namespace alat {
namespace {

auto keep_all = [](const GroupElem&) { return true; };

std::vector<GroupElem> symmetric_closure(std::vector<GroupElem> gens) {
  std::vector<GroupElem> out;
  for (const auto& g : gens) {
    out.push_back(g);
    out.push_back(inverse(g));
  }
  return out;
}

GroupElem retract(const PointIndex& index, const GroupElem& x, int k, double delta) {
  const PointSet& set = index.set();
  const double reach = k * delta;
  if (compose_bound(set.ambient, norm(x), reach) > set.enum_radius + 1e-12)
    throw CoreViolation("retraction: the " + std::to_string(reach) + "-ball about " + to_string(x) +
                        " leaves the enumeration");
  auto n = index.nearest(x);
  if (!n) throw InvalidArgument("retraction: empty point set");
  if (n->second > reach + 1e-9)
    throw VerificationFailure("retraction: nearest point to " + to_string(x) + " is at distance " +
                              std::to_string(n->second) + " > k delta = " + std::to_string(reach));
  return set.points[n->first];
}

}  // namespace

std::string_view word_family_name(WordFamily f) noexcept {
  switch (f) {
    case WordFamily::ZPowers: return "z-powers";
    case WordFamily::HeisZ: return "heis-z";
    case WordFamily::BS12: return "bs12";
    case WordFamily::QuadRingAdditive: return "quad-ring";
    case WordFamily::SL2Z: return "sl2z";
  }
  return "?";
}

WordGroup WordGroup::z_powers(int n) {
  if (n < 1 || n > 3) throw InvalidArgument("ZPowers supports ranks 1 to 3");
  WordGroup G;
  G.family = WordFamily::ZPowers;
  G.identity = EuclidElem::zero(static_cast<std::uint8_t>(n), 2);
  std::vector<GroupElem> basis;
  for (int i = 0; i < n; ++i) {
    EuclidElem e = EuclidElem::zero(static_cast<std::uint8_t>(n), 2);
    e.coords[static_cast<std::size_t>(i)] = QuadInt(1, 0, 2);
    basis.push_back(e);
  }
  G.S = symmetric_closure(basis);
  return G;
}

WordGroup WordGroup::heis_z() {
  WordGroup G;
  G.family = WordFamily::HeisZ;
  const QuadInt zero(0, 0, 2), one(1, 0, 2);
  G.identity = HeisElem::identity(2);
  G.S = symmetric_closure({HeisElem{one, zero, zero}, HeisElem{zero, one, zero}});
  return G;
}

WordGroup WordGroup::bs12() {
  WordGroup G;
  G.family = WordFamily::BS12;
  G.identity = BSElem{};
  G.S = {BSElem::gen_a(1), BSElem::gen_a(-1), BSElem::gen_b(), BSElem::gen_b_inv()};
  return G;
}

WordGroup WordGroup::quad_ring_additive(std::int64_t d) {
  WordGroup G;
  G.family = WordFamily::QuadRingAdditive;
  G.identity = EuclidElem::line(QuadInt(0, 0, d));
  G.S = symmetric_closure({EuclidElem::line(QuadInt(1, 0, d)), EuclidElem::line(QuadInt(0, 1, d))});
  return G;
}

WordGroup WordGroup::sl2z() {
  WordGroup G;
  G.family = WordFamily::SL2Z;
  G.identity = SL2Elem{};
  G.S = symmetric_closure({SL2Elem{1, 1, 0, 1}, SL2Elem{1, 0, 1, 1}});
  return G;
}

void WordGroup::validate() const {
  if (S.empty()) throw InvalidArgument("generating set is empty");
  for (const auto& s : S) {
    if (kind_of(s) != kind_of(identity)) throw InvalidArgument("generators of mixed kinds");
    if (std::find(S.begin(), S.end(), inverse(s)) == S.end())
      throw InvalidArgument("generating set is not symmetric: missing inverse of " + to_string(s));
  }
}

std::vector<BallEntry> word_ball(const WordGroup& G, int radius, std::size_t budget) {
  if (radius < 0) throw InvalidArgument("word_ball radius must be >= 0");
  G.validate();
  const auto dist = bfs_word_lengths(G.identity, G.S, radius, budget, keep_all,
                                     [](const auto&) { return false; });
  std::vector<BallEntry> out;
  out.reserve(dist.size());
  for (const auto& [g, d] : dist) out.push_back(BallEntry{g, d});
  std::sort(out.begin(), out.end(), [](const BallEntry& l, const BallEntry& r) {
    if (l.dist != r.dist) return l.dist < r.dist;
    return l.g < r.g;
  });
  return out;
}

int word_distance(const WordGroup& G, const GroupElem& g, const GroupElem& h, int max_radius,
                  std::size_t budget) {
  G.validate();
  const GroupElem target = mul(inverse(g), h);
  const auto dist = bfs_word_lengths(G.identity, G.S, max_radius, budget, keep_all,
                                     [&](const auto& d) { return d.count(target) != 0; });
  auto it = dist.find(target);
  if (it == dist.end())
    throw BudgetExceeded("word distance exceeds " + std::to_string(max_radius));
  return it->second;
}

bool RhoTable::nondecreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].second < rows[i - 1].second) return false;
  return true;
}

void fit_rho(RhoTable& t) {
  const auto n = static_cast<double>(t.rows.size());
  if (t.rows.empty()) return;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : t.rows) {
    sx += x;
    sy += y;
    sxx += static_cast<double>(x) * x;
    sxy += static_cast<double>(x) * y;
  }
  const double var = n * sxx - sx * sx;
  t.slope = var > 0 ? (n * sxy - sx * sy) / var : 0;
  t.intercept = (sy - t.slope * sx) / n;
  t.max_residual = 0;
  double above = 0;
  for (const auto& [x, y] : t.rows) {
    const double r = y - (t.slope * x + t.intercept);
    t.max_residual = std::max(t.max_residual, std::abs(r));
    above = std::max(above, r);
  }
  t.shadow_intercept = t.intercept + above;
}

RhoTable ms_rho(const PointSet& set, double K, const std::vector<GroupElem>& F, int n_max,
                std::size_t state_budget) {
  if (!(K > 0) || n_max < 0) throw InvalidArgument("ms_rho needs K > 0 and n_max >= 0");
  if (n_max * K > set.core_radius + 1e-12)
    throw CoreViolation("ms_rho: n_max K = " + std::to_string(n_max * K) + " exceeds the core radius " +
                        std::to_string(set.core_radius));
  std::vector<GroupElem> gens;
  for (const auto& f : F)
    if (!is_identity(f)) gens.push_back(f);
  const auto targets = set.within(n_max * K);
  bool truncated = false;
  const auto dist = bfs_word_lengths(
      set.identity(), gens, std::numeric_limits<int>::max(), state_budget, keep_all,
      [&](const auto& d) {
        return std::all_of(targets.begin(), targets.end(), [&](const GroupElem& t) { return d.count(t) != 0; });
      },
      &truncated);
  RhoTable table;
  for (int n = 0; n <= n_max; ++n) table.rows.emplace_back(n, 0);
  for (const auto& t : targets) {
    auto it = dist.find(t);
    if (it == dist.end())
      throw VerificationFailure("ms_rho: " + to_string(t) + " is not reached by F-words" +
                                (truncated ? " within the state budget" : ""));
    const double r = norm(t);
    for (int n = 0; n <= n_max; ++n)
      if (r <= n * K) table.rows[static_cast<std::size_t>(n)].second = std::max(table.rows[static_cast<std::size_t>(n)].second, it->second);
  }
  fit_rho(table);
  return table;
}

double witness_delta(const std::vector<GroupElem>& F) {
  double delta = 0;
  for (const auto& f : F) delta = std::max({delta, norm(f), norm(inverse(f))});
  return delta;
}

GroupElem retraction(const PointSet& set, const GroupElem& x, int k, double delta) {
  const PointIndex index(set);
  return retract(index, x, k, delta);
}

GroupElem quasi_action_apply(const PointSet& set, const GroupElem& g, const GroupElem& x, int k, double delta) {
  const PointIndex index(set);
  return retract(index, mul(g, x), k + 1, delta);
}

DefectReport quasi_action_defect(const PointSet& set, const std::vector<GroupElem>& F, int k, int l,
                                 std::size_t samples, std::uint64_t seed, double factor_norm,
                                 double x_radius) {
  if (k < 1 || l < 1) throw InvalidArgument("quasi_action_defect needs k, l >= 1");
  const PointIndex index(set);
  const auto factors = set.within(factor_norm);
  const auto xs = set.within(x_radius);
  if (factors.empty() || xs.empty()) throw InvalidArgument("quasi_action_defect: nothing to sample");
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<GroupElem>& v) -> const GroupElem& { return v[rng() % v.size()]; };
  auto product = [&](int n) {
    GroupElem g = pick(factors);
    for (int i = 1; i < n; ++i) g = mul(g, pick(factors));
    return g;
  };
  DefectReport rep;
  rep.delta = witness_delta(F);
  rep.bound = 4.0 * (k + l) * rep.delta;
  for (std::size_t i = 0; i < samples; ++i) {
    DefectSample s{product(k), product(l), pick(xs), 0};
    const GroupElem whole = retract(index, mul(mul(s.g, s.h), s.x), k + l + 1, rep.delta);
    const GroupElem inner = retract(index, mul(s.h, s.x), l + 1, rep.delta);
    const GroupElem outer = retract(index, mul(s.g, inner), k + 1, rep.delta);
    s.defect = distance(whole, outer);
    ++rep.samples;
    if (!rep.worst || s.defect > rep.max_defect) {
      rep.max_defect = s.defect;
      rep.worst = s;
    }
    if (s.defect > rep.bound + 1e-9) {
      ++rep.violations;
      if (!rep.first_violation) rep.first_violation = s;
    }
  }
  return rep;
}

std::string_view freiman_map_name(FreimanMapKind k) noexcept {
  switch (k) {
    case FreimanMapKind::Identity: return "identity";
    case FreimanMapKind::RationalPart: return "rational-part";
    case FreimanMapKind::ModN: return "mod";
    case FreimanMapKind::Star: return "star";
    case FreimanMapKind::AbsValue: return "abs";
  }
  return "?";
}

FreimanMapKind freiman_map_from_name(std::string_view name) {
  for (auto k : {FreimanMapKind::Identity, FreimanMapKind::RationalPart, FreimanMapKind::ModN,
                 FreimanMapKind::Star, FreimanMapKind::AbsValue})
    if (freiman_map_name(k) == name) return k;
  throw InvalidArgument("unknown map '" + std::string(name) + "'");
}

namespace {

std::int64_t floor_mod(std::int64_t v, std::int64_t n) {
  const std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

GroupElem reduce_image(const FreimanMap& map, GroupElem g) {
  if (map.kind != FreimanMapKind::ModN) return g;
  auto& e = std::get<EuclidElem>(g);
  for (std::size_t i = 0; i < e.dim; ++i) {
    const QuadInt& c = e.coords[i];
    e.coords[i] = QuadInt(floor_mod(c.a(), map.modulus), floor_mod(c.b(), map.modulus), c.d());
  }
  return g;
}

GroupElem apply_map(const FreimanMap& map, const GroupElem& g) {
  if (map.kind == FreimanMapKind::Identity) return g;
  const auto* e = std::get_if<EuclidElem>(&g);
  if (!e) throw InvalidArgument("map '" + std::string(freiman_map_name(map.kind)) + "' needs a vector-group domain");
  EuclidElem out = *e;
  for (std::size_t i = 0; i < out.dim; ++i) {
    const QuadInt& c = e->coords[i];
    switch (map.kind) {
      case FreimanMapKind::RationalPart: out.coords[i] = QuadInt(c.a(), 0, c.d()); break;
      case FreimanMapKind::Star: out.coords[i] = c.conjugate(); break;
      case FreimanMapKind::AbsValue:
        if (out.dim != 1) throw InvalidArgument("abs map needs a one-dimensional domain");
        out.coords[i] = sign_of(c.a(), c.b(), c.d()) < 0 ? -c : c;
        break;
      default: break;
    }
  }
  return reduce_image(map, out);
}

}  // namespace

FreimanResult freiman_check(const FreimanMap& map, int k, const PointSet& domain, std::size_t tuple_budget) {
  if (k < 1) throw InvalidArgument("freiman_check needs k >= 1");
  if (map.kind == FreimanMapKind::ModN && map.modulus < 1) throw InvalidArgument("modulus must be >= 1");
  const auto& pts = domain.points;
  const std::size_t n = pts.size();
  FreimanResult res;
  if (n == 0) return res;
  std::vector<GroupElem> images;
  for (const auto& p : pts) images.push_back(apply_map(map, p));
  // Vector groups are abelian, so nondecreasing index tuples suffice there.
  const bool abelian = domain.ambient != Ambient::Heisenberg;

  struct Seen {
    GroupElem image;
    std::vector<std::size_t> tuple;
  };
  std::unordered_map<GroupElem, Seen> classes;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    if (++res.tuples > tuple_budget)
      throw BudgetExceeded("freiman_check: more than " + std::to_string(tuple_budget) + " tuples");
    GroupElem prod = pts[idx[0]];
    GroupElem img = images[idx[0]];
    for (std::size_t j = 1; j < idx.size(); ++j) {
      prod = mul(prod, pts[idx[j]]);
      img = reduce_image(map, mul(img, images[idx[j]]));
    }
    auto [it, fresh] = classes.try_emplace(prod, Seen{img, idx});
    if (!fresh && it->second.image != img) {
      res.is_freiman = false;
      for (auto i : it->second.tuple) res.lhs.push_back(pts[i]);
      for (auto i : idx) res.rhs.push_back(pts[i]);
      res.product_classes = classes.size();
      return res;
    }
    // Next tuple in lexicographic order (nondecreasing when abelian).
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] + 1 == n) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < idx.size(); ++j) idx[j] = abelian ? idx[pos - 1] : 0;
  }
  res.product_classes = classes.size();
  return res;
}

DistortionResult bs_distortion(int n, int k, std::size_t budget) {
  if (n < 0 || n > 24) throw InvalidArgument("bs_distortion needs 0 <= n <= 24");
  if (k < 1 || k > 4) throw InvalidArgument("bs_distortion needs 1 <= k <= 4");
  DistortionResult res;
  res.n = n;
  res.k = k;
  res.unconstrained_upper = 2 * n + 1;
  const std::int64_t power = std::int64_t{1} << n;
  const GroupElem target = BSElem::gen_a(power);
  res.word_verified = BSElem::from_word(std::string(static_cast<std::size_t>(n), 'b') + "a" +
                                        std::string(static_cast<std::size_t>(n), 'B')) == std::get<BSElem>(target);
  const WordGroup G = WordGroup::bs12();
  auto reached = [&](const auto& d) { return d.count(target) != 0; };
  if (n <= 4) {
    const auto d = bfs_word_lengths(G.identity, G.S, 2 * n + 1, budget, keep_all, reached);
    if (auto it = d.find(target); it != d.end()) res.unconstrained_bfs = it->second;
  }
  const std::int64_t mmax = power * 2;
  auto inside = [&](const GroupElem& g) {
    const auto& b = std::get<BSElem>(g);
    return b.syllable_length() <= k && std::abs(b.m) <= mmax && b.p <= k + 1 && b.q <= k + 1;
  };
  bool truncated = false;
  const auto d = bfs_word_lengths(G.identity, G.S, std::numeric_limits<int>::max(), budget, inside, reached,
                                  &truncated);
  res.states = d.size();
  auto it = d.find(target);
  if (it == d.end())
    throw BudgetExceeded("bs_distortion: a^(2^" + std::to_string(n) + ") not reached within " +
                         std::to_string(budget) + " states");
  res.constrained_length = it->second;
  return res;
}

std::vector<FolnerRow> folner_report(const PointSet& set, double R, const std::vector<double>& radii) {
  if (!(R > 0)) throw InvalidArgument("folner_report needs R > 0");
  const PointIndex index(set);
  const Ambient a = set.ambient;
  const GroupElem e = set.identity();
  std::vector<FolnerRow> rows;
  for (double r : radii) {
    const double outer = compose_bound(a, r, R);
    if (r > set.core_radius || compose_bound(a, outer, R) > set.enum_radius + 1e-12)
      throw CoreViolation("folner_report: window of radius " + std::to_string(r) + " is too close to the boundary");
    std::unordered_set<std::size_t> window;
    for (std::size_t i : index.ball(e, r)) window.insert(i);
    FolnerRow row;
    row.radius = r;
    row.window = window.size();
    for (std::size_t i : index.ball(e, outer)) {
      const bool in = window.count(i) != 0;
      for (std::size_t j : index.ball(set.points[i], R)) {
        if ((window.count(j) != 0) != in && distance(set.points[i], set.points[j]) < R) {
          ++row.boundary;
          break;
        }
      }
    }
    row.ratio = row.window ? static_cast<double>(row.boundary) / static_cast<double>(row.window) : 0;
    rows.push_back(row);
  }
  return rows;
}

bool folner_evidence(const std::vector<FolnerRow>& rows, double eps) {
  if (rows.empty()) return false;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].ratio < rows[i - 1].ratio)) return false;
  return rows.back().ratio < eps;
}

CartanReport cartan_syndetic(const std::vector<GroupElem>& elems) {
  if (elems.size() < 2) throw InvalidArgument("cartan_syndetic needs at least two elements");
  std::vector<CartanData> data;
  for (const auto& g : elems) {
    const auto* m = std::get_if<SL2Elem>(&g);
    if (!m) throw InvalidArgument("cartan_syndetic: " + to_string(g) + " is not an SL2 element");
    data.push_back(cartan_t(*m));
  }
  std::sort(data.begin(), data.end(), [](const CartanData& l, const CartanData& r) { return l.t < r.t; });
  CartanReport rep;
  for (const auto& c : data) {
    if (!rep.t.empty() && c.t - rep.t.back() <= 1e-12) continue;
    rep.t.push_back(c.t);
    rep.s.push_back(c.s);
  }
  for (std::size_t i = 1; i < rep.t.size(); ++i) {
    const double gap = rep.t[i] - rep.t[i - 1];
    rep.gaps.push_back(gap);
    rep.max_gap = std::max(rep.max_gap, gap);
    if (gap > std::log(2.0) + std::log(rep.s[i] / rep.s[i - 1]) + 1e-9) rep.violations.push_back(i - 1);
  }
  return rep;
}

}  // namespace alat
