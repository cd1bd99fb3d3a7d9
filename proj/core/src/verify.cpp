#include "alat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>

#include "alat/bfs.hpp"
#include "alat/error.hpp"
#include "alat/point_index.hpp"

namespace alat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t ambient_dim(Ambient a) {
  switch (a) {
    case Ambient::Line: return 1;
    case Ambient::Plane: return 2;
    case Ambient::Heisenberg: return 3;
  }
  return 1;
}

bool additive(Ambient a) { return a != Ambient::Heisenberg; }

PointSet restricted(const PointSet& set, double radius) {
  PointSet out = set;
  out.points = set.within(radius);
  out.enum_radius = std::min(set.enum_radius, radius);
  out.core_radius = std::min(set.core_radius, radius);
  return out;
}

// Largest x in [0, hi] with pred(x), assuming pred is monotone decreasing.
template <class Pred>
double bisect_max(double hi, Pred pred) {
  if (pred(hi)) return hi;
  double lo = 0;
  if (!pred(lo)) return -1;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

double min_pairwise(const PointSet& core) {
  if (core.size() < 2) return kInf;
  if (core.ambient == Ambient::Line) {
    std::vector<double> xs;
    for (const auto& p : core.points) xs.push_back(embed(p)[0]);
    std::sort(xs.begin(), xs.end());
    double best = kInf;
    for (std::size_t i = 1; i < xs.size(); ++i) best = std::min(best, xs[i] - xs[i - 1]);
    return best;
  }
  PointIndex index(core);
  double best = kInf;
  for (std::size_t i = 0; i < core.size(); ++i) {
    if (auto n = index.nearest(core.points[i], i)) best = std::min(best, n->second);
  }
  return best;
}

double default_resolution(Ambient a, double packing, double region) {
  const double floor = a == Ambient::Heisenberg ? region / 20 : region / 100;
  return std::max(std::isfinite(packing) ? packing / 2 : 0.0, floor);
}

struct Product {
  GroupElem z;
  GroupElem x;
  GroupElem y;
};

bool integer_coords(const PointSet& set) {
  if (!additive(set.ambient)) return false;
  for (const auto& p : set.points) {
    const auto& e = std::get<EuclidElem>(p);
    for (std::size_t i = 0; i < e.dim; ++i)
      if (!e.coords[i].is_rational()) return false;
  }
  return true;
}

// Representatives of every distinct product xy with norm(x), norm(y) <= c.
// Integer lattices are scanned target by target, searching factor pairs
// outward from the midpoint; everything else is scanned pair by pair.
std::vector<Product> pair_products(const PointSet& set, const PointIndex& index, double c) {
  const auto factors = set.within(c);
  std::vector<Product> out;
  const std::size_t pairs = factors.size() * factors.size();
  if (pairs > 4'000'000 && integer_coords(set) && !factors.empty()) {
    const auto dim = static_cast<std::size_t>(std::get<EuclidElem>(factors.front()).dim);
    const std::int64_t d = set.d;
    const auto reach = static_cast<std::int64_t>(std::floor(2 * c));
    std::int64_t ylo = 0, yhi = 0;
    if (dim == 2) ylo = -reach, yhi = reach;
    for (std::int64_t a = -reach; a <= reach; ++a) {
      for (std::int64_t b = ylo; b <= yhi; ++b) {
        const EuclidElem z = dim == 1 ? EuclidElem::integer(a, d)
                                      : EuclidElem::plane(QuadInt::rational(a, d), QuadInt::rational(b, d));
        const double zn = norm(z);
        if (zn > 2 * c + 1e-9) continue;
        const Coords mid{0.5 * static_cast<double>(a), 0.5 * static_cast<double>(b), 0};
        // Both factors lie in B_c(0) n B_c(z), which sits inside this ball about z/2.
        const double lens = dim == 1 ? c - zn / 2 : std::sqrt(std::max(0.0, c * c - zn * zn / 4));
        bool found = false;
        std::unordered_set<std::size_t> seen;
        for (double r = 1; !found; r *= 2) {
          const double rr = std::min(r, lens + 1e-9);
          auto cand = index.ball(mid, rr);
          std::sort(cand.begin(), cand.end(), [&](std::size_t i, std::size_t j) {
            const double di = float_distance(set.ambient, mid, index.coords(i));
            const double dj = float_distance(set.ambient, mid, index.coords(j));
            if (di != dj) return di < dj;
            return set.points[i] < set.points[j];
          });
          for (std::size_t i : cand) {
            if (!seen.insert(i).second) continue;
            const auto& x = set.points[i];
            if (norm(x) > c) continue;
            GroupElem y = mul(inverse(x), GroupElem{z});
            if (norm(y) > c || !index.contains(y)) continue;
            out.push_back(Product{GroupElem{z}, x, std::move(y)});
            found = true;
            break;
          }
          if (rr >= lens) break;
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const Product& l, const Product& r) { return l.z < r.z; });
    return out;
  }
  std::unordered_map<GroupElem, std::size_t> seen;
  const bool abelian = additive(set.ambient);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = abelian ? i : 0; j < factors.size(); ++j) {
      GroupElem z = mul(factors[i], factors[j]);
      if (seen.emplace(z, out.size()).second) out.push_back(Product{std::move(z), factors[i], factors[j]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Product& l, const Product& r) { return l.z < r.z; });
  return out;
}

}  // namespace

double covering_radius(const PointSet& set, double region, double resolution, double* error) {
  if (error) *error = 0;
  if (set.ambient == Ambient::Line) {
    std::vector<double> xs;
    for (const auto& p : set.within(region)) xs.push_back(embed(p)[0]);
    if (xs.size() < 2) return kInf;
    std::sort(xs.begin(), xs.end());
    double gap = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) gap = std::max(gap, xs[i] - xs[i - 1]);
    return gap / 2;
  }
  if (!(resolution > 0)) throw InvalidArgument("covering_radius: resolution must be positive");
  if (set.empty()) return kInf;
  PointIndex index(set);
  const std::size_t dim = ambient_dim(set.ambient);
  const auto steps = static_cast<std::int64_t>(std::floor(region / resolution));
  double worst = 0;
  Coords g{0, 0, 0};
  std::int64_t i[3] = {-steps, -steps, -steps};
  for (;;) {
    for (std::size_t k = 0; k < dim; ++k) g[k] = static_cast<double>(i[k]) * resolution;
    if (float_norm(set.ambient, g) <= region) {
      if (auto n = index.nearest(g)) worst = std::max(worst, n->second);
    }
    std::size_t k = 0;
    while (k < dim && ++i[k] > steps) i[k++] = -steps;
    if (k == dim) break;
  }
  if (error) {
    // A point of the region lies within half a grid diagonal of a sample.
    const double half_diag = resolution * std::sqrt(static_cast<double>(dim)) / 2;
    *error = set.ambient == Ambient::Heisenberg ? compose_bound(set.ambient, half_diag, region) - region
                                                : half_diag;
  }
  return worst;
}

DeloneReport delone_parameters(const PointSet& set, double resolution) {
  const PointSet core = restricted(set, set.core_radius);
  if (core.size() < 2) throw InvalidArgument("delone_parameters: the core holds fewer than two points");
  DeloneReport rep;
  rep.core_radius = set.core_radius;
  rep.core_points = core.size();
  rep.packing_radius = min_pairwise(core);
  if (set.ambient == Ambient::Line) {
    rep.covering_radius = covering_radius(set, set.core_radius, 0);
    rep.sampled_radius = set.core_radius;
    return rep;
  }
  const double h = resolution > 0 ? resolution
                                  : default_resolution(set.ambient, rep.packing_radius, set.core_radius);
  const double first = covering_radius(set, set.core_radius / 2, h);
  const double region =
      std::min(set.core_radius, compose_slack(set.ambient, set.enum_radius, 2 * first + h));
  if (region <= 0) throw CoreViolation("delone_parameters: enumeration too small to sample the covering radius");
  rep.resolution = h;
  rep.sampled_radius = region;
  rep.covering_radius = covering_radius(set, region, h, &rep.covering_error);
  return rep;
}

double power_core_radius(const PointSet& set, int k, double max_factor_norm) {
  double rho = set.core_radius;
  const double inv = inverse_bound(set.ambient, max_factor_norm);
  for (int j = 1; j < k; ++j) rho = compose_slack(set.ambient, rho, inv);
  return rho;
}

PointSet power_set(const PointSet& set, int k, double max_factor_norm) {
  if (k < 1) throw InvalidArgument("power_set: k must be >= 1");
  if (!set.has_identity() || !set.is_symmetric())
    throw InvalidArgument("power_set: the set must be symmetric and contain the identity");
  if (k == 1) return set;
  double m = max_factor_norm;
  if (m <= 0) {
    m = bisect_max(set.core_radius, [&](double x) {
      return power_core_radius(set, k, x) >= set.core_radius / 2;
    });
  }
  std::vector<double> radii{set.core_radius};
  for (int j = 1; j < k; ++j) radii.push_back(compose_slack(set.ambient, radii.back(), inverse_bound(set.ambient, m)));
  if (!(radii.back() > 0))
    throw CoreViolation("power_set: the core is empty after " + std::to_string(k) + "-fold products");
  const auto factors = set.within(m);
  std::vector<GroupElem> layer = set.core_points();
  for (int j = 1; j < k; ++j) {
    std::unordered_set<GroupElem> next;
    for (const auto& s : layer) {
      for (const auto& x : factors) {
        GroupElem p = mul(s, x);
        if (norm(p) <= radii[static_cast<std::size_t>(j)]) next.insert(std::move(p));
      }
    }
    layer.assign(next.begin(), next.end());
  }
  PointSet out;
  out.family = Family::Custom;
  out.ambient = set.ambient;
  out.d = set.d;
  out.points = std::move(layer);
  out.enum_radius = radii.back();
  out.core_radius = radii.back();
  out.provenance = set.provenance;
  out.provenance["power"] = std::to_string(k);
  out.provenance["maxFactorNorm"] = std::to_string(m);
  out.canonicalize();
  return out;
}

double ag3_pair_radius(const PointSet& set, double f_norm) {
  const Ambient a = set.ambient;
  const double inv_f = inverse_bound(a, f_norm);
  auto ok = [&](double c) {
    const double z = compose_bound(a, c, c);
    return compose_bound(a, inv_f, z) <= set.core_radius &&
           compose_bound(a, inverse_bound(a, z), f_norm) <= set.enum_radius;
  };
  const double c = bisect_max(set.core_radius, ok);
  if (!(c > 0)) throw CoreViolation("AG3: the core is too small for a witness of norm " + std::to_string(f_norm));
  return c;
}

AG3Result verify_ag3_witness(const PointSet& set, const std::vector<GroupElem>& F, double pair_radius,
                             std::size_t max_failures) {
  PointIndex index(set);
  AG3Result res;
  res.pair_radius = pair_radius;
  double delta = 0;
  for (const auto& f : F) delta = std::max(delta, norm(f));
  std::vector<GroupElem> f_inv;
  for (const auto& f : F) f_inv.push_back(inverse(f));
  const auto products = pair_products(set, index, pair_radius);
  for (const auto& p : products) {
    ++res.products_checked;
    bool hit = false;
    for (const auto& fi : f_inv) {
      if (index.contains(mul(fi, p.z))) {
        hit = true;
        break;
      }
    }
    if (hit) continue;
    AG3Failure fail{p.x, p.y, p.z, false, {}};
    fail.near_boundary = compose_bound(set.ambient, inverse_bound(set.ambient, delta), norm(p.z)) > set.enum_radius;
    fail.reason = fail.near_boundary ? "f^-1 xy may lie beyond the enumeration radius"
                                     : "no f in F with f^-1 xy in the set";
    res.failures.push_back(std::move(fail));
    if (res.failures.size() >= max_failures) break;
  }
  if (res.failures.empty()) {
    AG3Witness w;
    w.F = F;
    std::sort(w.F.begin(), w.F.end());
    w.verified_core_radius = pair_radius;
    w.delta = delta;
    w.products_checked = res.products_checked;
    w.search_radius = delta;
    res.witness = std::move(w);
  }
  return res;
}

AG3Result try_find_ag3_witness(const PointSet& set, double covering, const AG3Options& opts) {
  if (!(covering >= 0) || !std::isfinite(covering)) throw InvalidArgument("AG3: covering radius must be finite");
  if (!set.has_identity() || !set.is_symmetric())
    throw InvalidArgument("AG3: the set must be symmetric and contain the identity");
  const double slack = opts.slack < 0 ? 2 * covering : opts.slack;
  const double search = covering + slack;
  const double c = opts.pair_radius < 0 ? ag3_pair_radius(set, search) : opts.pair_radius;
  PointIndex index(set);
  AG3Result res;
  res.pair_radius = c;
  std::unordered_set<GroupElem> used;
  for (const auto& p : pair_products(set, index, c)) {
    ++res.products_checked;
    const GroupElem zi = inverse(p.z);
    auto w = index.nearest(zi);
    GroupElem f = w ? mul(p.z, set.points[w->first]) : p.z;
    if (w && norm(f) <= search + 1e-9) {
      used.insert(std::move(f));
      continue;
    }
    AG3Failure fail{p.x, p.y, p.z, false, {}};
    fail.near_boundary = compose_bound(set.ambient, inverse_bound(set.ambient, norm(p.z)), search) > set.enum_radius;
    fail.reason = "nearest point to (xy)^-1 gives |f| = " + std::to_string(norm(f)) + " > " + std::to_string(search);
    res.failures.push_back(std::move(fail));
    if (res.failures.size() >= opts.max_failures) break;
  }
  if (!res.failures.empty()) return res;
  std::vector<GroupElem> F(used.begin(), used.end());
  std::sort(F.begin(), F.end());
  AG3Result check = verify_ag3_witness(set, F, c, opts.max_failures);
  if (!check.ok()) return check;
  check.witness->search_radius = search;
  return check;
}

AG3Witness find_ag3_witness(const PointSet& set, double covering, const AG3Options& opts) {
  AG3Result res = try_find_ag3_witness(set, covering, opts);
  if (res.ok()) return *res.witness;
  const auto& f = res.failures.front();
  throw VerificationFailure("AG3 failed for x = " + to_string(f.x) + ", y = " + to_string(f.y) + ": " +
                            f.reason + (f.near_boundary ? " (near the enumeration boundary)" : ""));
}

LocalFinitenessProfile local_finiteness_profile(const PointSet& set, int k, double K, double sample_radius,
                                                double max_factor_norm) {
  const PointSet q = power_set(set, k, max_factor_norm);
  const double limit = compose_slack(set.ambient, q.core_radius, K);
  if (sample_radius <= 0) sample_radius = std::min(limit, set.core_radius);
  if (sample_radius > limit + 1e-12 || limit < 0)
    throw CoreViolation("local_finiteness_profile: K-balls around the samples leave the core of Lambda^" +
                        std::to_string(k));
  PointIndex index(q);
  LocalFinitenessProfile prof;
  prof.power_core = q.core_radius;
  for (const auto& g : set.within(sample_radius)) {
    ++prof.centers;
    prof.c_k = std::max<std::int64_t>(prof.c_k, static_cast<std::int64_t>(index.ball(g, K).size()));
  }
  return prof;
}

std::vector<PatchCount> flc_patches(const PointSet& set, double rho) {
  if (!(rho > 0) || rho > set.core_radius / 2 + 1e-12)
    throw InvalidArgument("flc_patches: rho must lie in (0, coreRadius/2]");
  PointIndex index(set);
  std::map<Patch, std::int64_t> catalog;
  for (const auto& x : set.within(compose_slack(set.ambient, set.core_radius, rho))) {
    Patch p;
    p.radius = rho;
    const GroupElem xi = inverse(x);
    for (std::size_t i : index.ball(x, rho)) p.points.push_back(mul(xi, set.points[i]));
    std::sort(p.points.begin(), p.points.end());
    ++catalog[std::move(p)];
  }
  std::vector<PatchCount> out;
  for (auto& [patch, count] : catalog) out.push_back(PatchCount{patch, static_cast<std::size_t>(count)});
  return out;
}

RelDenseReport rel_dense_subset_check(const PointSet& subset, const PointSet& set) {
  for (const auto& p : subset.points)
    if (norm(p) <= set.enum_radius && !set.contains(p))
      throw InvalidArgument("rel_dense_subset_check: " + to_string(p) + " is not in the ambient set");
  const double core = std::min(subset.core_radius, set.core_radius);
  RelDenseReport rep;
  const double h = set.ambient == Ambient::Line ? 0 : default_resolution(set.ambient, min_pairwise(restricted(set, core)), core);
  rep.ambient_cover_half = covering_radius(subset, core / 2, h);
  rep.ambient_cover_full = covering_radius(subset, core, h);
  PointIndex index(subset);
  auto in_set = [&](double r) {
    double worst = 0;
    for (const auto& p : set.within(r)) {
      auto n = index.nearest(p);
      worst = std::max(worst, n ? n->second : kInf);
    }
    return worst;
  };
  rep.in_set_half = in_set(core / 2);
  rep.in_set_full = in_set(core);
  auto bounded = [](double half, double full) {
    return std::isfinite(half) && std::isfinite(full) && full <= 1.5 * half + 1e-9;
  };
  rep.dense_in_ambient = bounded(rep.ambient_cover_half, rep.ambient_cover_full);
  rep.dense_in_set = bounded(rep.in_set_half, rep.in_set_full);
  return rep;
}

std::vector<GroupElem> square_ball(const PointSet& set, double K) {
  PointIndex index(set);
  std::unordered_set<GroupElem> out;
  for (const auto& x : set.points) {
    if (compose_bound(set.ambient, inverse_bound(set.ambient, norm(x)), K) > set.enum_radius) continue;
    // |xy| = d(x^-1, y)
    for (std::size_t i : index.ball(inverse(x), K)) out.insert(mul(x, set.points[i]));
  }
  std::vector<GroupElem> v(out.begin(), out.end());
  std::sort(v.begin(), v.end());
  return v;
}

GeneratingReport generating_check(const PointSet& set, double K, double test_radius, std::size_t state_budget) {
  GeneratingReport rep;
  rep.F = square_ball(set, K);
  std::vector<GroupElem> gens;
  for (const auto& f : rep.F)
    if (!is_identity(f)) gens.push_back(f);
  const auto targets = set.within(test_radius);
  rep.targets = targets.size();
  auto all_reached = [&](const std::unordered_map<GroupElem, int>& dist) {
    for (const auto& t : targets)
      if (!dist.count(t)) return false;
    return true;
  };
  bool truncated = false;
  const auto dist = bfs_word_lengths(set.identity(), gens, std::numeric_limits<int>::max(), state_budget,
                                     [](const GroupElem&) { return true; }, all_reached, &truncated);
  for (const auto& t : targets) {
    auto it = dist.find(t);
    if (it == dist.end()) {
      if (!rep.unreached) rep.unreached = t;
      continue;
    }
    ++rep.reached;
    rep.max_word_length = std::max(rep.max_word_length, it->second);
  }
  if (rep.unreached)
    throw VerificationFailure("generating_check: " + to_string(*rep.unreached) +
                              " is not reached by words in Lambda^2 n B_K (K = " + std::to_string(K) + ")");
  return rep;
}

std::size_t max_points_in_translates(const PointSet& set, double radius, double sample_step) {
  PointIndex index(set);
  std::size_t best = 0;
  auto open_count = [&](const auto& center) {
    std::size_t n = 0;
    for (std::size_t i : index.ball(center, radius)) {
      double dist;
      if constexpr (std::is_same_v<std::decay_t<decltype(center)>, Coords>)
        dist = float_distance(set.ambient, center, index.coords(i));
      else
        dist = distance(center, set.points[i]);
      if (dist < radius) ++n;
    }
    return n;
  };
  const double inner = compose_slack(set.ambient, set.core_radius, radius);
  for (const auto& g : set.within(inner)) best = std::max(best, open_count(g));
  if (sample_step > 0 && inner > 0) {
    const std::size_t dim = ambient_dim(set.ambient);
    const auto steps = static_cast<std::int64_t>(std::floor(inner / sample_step));
    std::int64_t i[3] = {-steps, -steps, -steps};
    Coords g{0, 0, 0};
    for (;;) {
      for (std::size_t k = 0; k < dim; ++k) g[k] = static_cast<double>(i[k]) * sample_step;
      if (float_norm(set.ambient, g) <= inner) best = std::max(best, open_count(g));
      std::size_t k = 0;
      while (k < dim && ++i[k] > steps) i[k++] = -steps;
      if (k == dim) break;
    }
  }
  return best;
}

ChainReport discreteness_chain(const PointSet& set, const ChainOptions& opts) {
  ChainReport rep;
  const auto patches = flc_patches(set, opts.rho);
  rep.patch_types = patches.size();
  rep.flc = !patches.empty();

  PointIndex index(set);
  std::unordered_set<GroupElem> diff;
  for (const auto& x : set.within(compose_slack(set.ambient, set.core_radius, opts.K))) {
    const GroupElem xi = inverse(x);
    for (std::size_t i : index.ball(x, opts.K)) diff.insert(mul(xi, set.points[i]));
  }
  std::vector<GroupElem> d(diff.begin(), diff.end());
  rep.difference_min_gap = kInf;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) rep.difference_min_gap = std::min(rep.difference_min_gap, distance(d[i], d[j]));
  rep.difference_discrete = d.size() >= 2 && rep.difference_min_gap > 0;

  rep.packing_radius = delone_parameters(set).packing_radius;
  rep.uniformly_discrete = rep.packing_radius > 0 && std::isfinite(rep.packing_radius);

  const auto prof = local_finiteness_profile(set, opts.k, opts.K, opts.sample_radius, opts.max_factor_norm);
  rep.c_k = prof.c_k;
  rep.locally_finite = prof.centers > 0 && prof.c_k > 0;

  if (rep.flc && !rep.difference_discrete) rep.violations.push_back("FLC holds but Lambda^-1 Lambda has a zero gap");
  if (rep.difference_discrete && !rep.uniformly_discrete)
    rep.violations.push_back("Lambda^-1 Lambda is discrete but the packing radius is zero");
  if (rep.uniformly_discrete && !rep.locally_finite)
    rep.violations.push_back("packing radius positive but Lambda^k counts are unbounded");
  return rep;
}

}  // namespace alat
