#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <alat/cutproject.hpp>
#include <alat/error.hpp>
#include <alat/ggt.hpp>
#include <alat/hull.hpp>
#include <alat/stationary.hpp>
#include <alat/verify.hpp>

using namespace alat;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Coords at(double x, double y = 0, double z = 0) { return Coords{x, y, z}; }

PointSet quad_line(double radius) {
  return enumerate(Scheme{SchemeFamily::QuadraticLine, 2, Window::parse("-5,5")}, radius);
}

std::int64_t line_a(const GroupElem& g) { return std::get<EuclidElem>(g)[0].a(); }
std::int64_t line_b(const GroupElem& g) { return std::get<EuclidElem>(g)[0].b(); }

TestFunction triangle(double center, double radius) {
  Bump b;
  b.center = at(center);
  b.radius = radius;
  return TestFunction::bump(Ambient::Line, b);
}

// Model set axioms on the quadratic line.
void c1(Outcome& o) {
  const PointSet p = quad_line(200);

  // Independent enumeration of a + b sqrt2 with |x| <= 200 and |a - b sqrt2| <= 5.
  const double r2 = std::sqrt(2.0);
  std::set<std::pair<std::int64_t, std::int64_t>> oracle;
  for (std::int64_t b = -80; b <= 80; ++b)
    for (std::int64_t a = -210; a <= 210; ++a)
      if (std::abs(a + b * r2) <= 200 && std::abs(a - b * r2) <= 5) oracle.emplace(a, b);
  std::set<std::pair<std::int64_t, std::int64_t>> got;
  for (const auto& g : p.points) got.emplace(line_a(g), line_b(g));
  o.require(got == oracle, "enumeration matches the direct scan");

  const auto d = delone_parameters(p);
  std::vector<double> xs;
  for (const auto& g : p.within(p.core_radius)) xs.push_back(embed(g)[0]);
  double min_gap = INFINITY;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) min_gap = std::min(min_gap, std::abs(xs[i] - xs[j]));
  o.require(std::abs(d.packing_radius - min_gap) <= 1e-12, "packing radius equals the brute-force min gap");
  o.require(d.packing_radius >= 0.1, "packing radius >= 0.1");
  o.require(std::isfinite(d.covering_radius), "finite covering radius");

  const auto w = find_ag3_witness(p, d.covering_radius);
  const auto re = verify_ag3_witness(p, w.F, w.verified_core_radius);
  o.require(re.ok(), "exhaustive re-verification of F");

  // Independent check of xy in F Lambda over the verified pairs.
  std::size_t pairs = 0;
  bool all = true;
  const auto core = p.within(w.verified_core_radius);
  for (const auto& x : core)
    for (const auto& y : core) {
      const std::int64_t sa = line_a(x) + line_a(y), sb = line_b(x) + line_b(y);
      bool hit = false;
      for (const auto& f : w.F) hit = hit || got.count({sa - line_a(f), sb - line_b(f)});
      all = all && hit;
      ++pairs;
    }
  o.require(all, "every verified product lies in F Lambda");
  o.note("packing " + fmt("%.6f", d.packing_radius) + ", covering " + fmt("%.6f", d.covering_radius) + ", |F| " +
         std::to_string(w.F.size()) + ", pairs " + std::to_string(pairs));
}

// Discreteness chain and the Lambda^6 profile.
void c2(Outcome& o) {
  ChainOptions small;
  small.rho = 2;
  small.K = 2;
  const std::vector<std::pair<std::string, PointSet>> line_sets = {
      {"Z", integer_lattice(40)}, {"fish", fish_set(8)}, {"quad-line", quad_line(60)}};
  std::size_t violations = 0;
  for (const auto& [name, p] : line_sets) {
    const auto r = discreteness_chain(p, small);
    violations += r.violations.size();
    o.require(r.holds() && r.flc && r.uniformly_discrete && r.locally_finite, "chain on " + name);
  }
  ChainOptions heis;
  heis.rho = 1;
  heis.K = 1;
  heis.max_factor_norm = 0.5;
  const PointSet h = enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1)}, 6);
  const auto rh = discreteness_chain(h, heis);
  violations += rh.violations.size();
  o.require(rh.holds(), "chain on the Heisenberg model set");

  const auto a = local_finiteness_profile(quad_line(60), 6, 1, 15, 3);
  const auto b = local_finiteness_profile(quad_line(90), 6, 1, 15, 3);
  o.require(a.c_k == b.c_k && a.c_k > 0, "Lambda^6 C_K identical at radii 60 and 90");
  o.note("violations " + std::to_string(violations) + ", C_K(Lambda^6, K=1) = " + std::to_string(a.c_k) + " / " +
         std::to_string(b.c_k));
}

// Visible points fail AG3 while V + V covers the box.
void c3(Outcome& o) {
  const PointSet v = with_identity(visible_points(200));
  const PointSet v50 = with_identity(visible_points(50));
  AG3Options opts;
  opts.slack = 0;
  const auto derive = try_find_ag3_witness(v50, 1, opts);
  o.require(derive.ok(), "F derived on V(50)");
  if (!derive.ok()) return;
  const auto& F = derive.witness->F;
  const auto res = verify_ag3_witness(v, F, ag3_pair_radius(v, derive.witness->delta));
  o.require(!res.ok() && !res.failures.empty(), "AG3 fails on V(200) with a witness pair");

  const auto xy = [](const GroupElem& g) {
    const auto& e = std::get<EuclidElem>(g);
    return std::make_pair(e[0].a(), e[1].a());
  };
  if (!res.failures.empty()) {
    const auto& f0 = res.failures.front();
    const auto [x1, y1] = xy(f0.x);
    const auto [x2, y2] = xy(f0.y);
    bool escaped = true;
    for (const auto& f : F) {
      const auto [fx, fy] = xy(f);
      const std::int64_t u = x1 + x2 - fx, w = y1 + y2 - fy;
      escaped = escaped && !((u == 0 && w == 0) || (std::max(std::abs(u), std::abs(w)) <= 200 && gcd_abs(u, w) == 1));
    }
    o.require(escaped, "witness pair re-checked by gcd");
    o.note("witness x=(" + std::to_string(x1) + "," + std::to_string(y1) + ") y=(" + std::to_string(x2) + "," +
           std::to_string(y2) + "), |F| " + std::to_string(F.size()));
  }

  const auto cover = visible_sumset_cover(200, 100);
  o.require(cover.complete() && cover.targets == 201 * 201, "V + V covers [-100,100]^2");
  // Explicit decomposition (u, w) = (1, w - 1) + (u - 1, 1).
  bool explicit_ok = true;
  for (std::int64_t u = -100; u <= 100; ++u)
    for (std::int64_t w = -100; w <= 100; ++w)
      explicit_ok = explicit_ok && gcd_abs(1, w - 1) == 1 && gcd_abs(u - 1, 1) == 1;
  o.require(explicit_ok, "explicit decomposition oracle");
  o.note("sumset " + std::to_string(cover.covered) + "/" + std::to_string(cover.targets));
}

// Milnor-Schwarz growth.
void c4(Outcome& o) {
  const PointSet p = quad_line(200);
  const double R = delone_parameters(p).covering_radius;
  const double K = 3 * R;
  const auto t = ms_rho(p, K, square_ball(p, K), 10);
  o.require(t.rows.size() == 11, "rho(n) for n = 0..10");
  o.require(t.affine_within(2), "affine residual <= 2");
  o.require(t.nondecreasing(), "rho nondecreasing");

  const PointSet z = integer_lattice(40);
  const auto tz = ms_rho(z, 2, square_ball(z, 1.5), 10);
  bool exact = tz.rows.size() == 11;
  for (const auto& [n, r] : tz.rows) exact = exact && r == 2 * n;
  o.require(exact, "rho(n) = 2n on Z");
  o.note("slope " + fmt("%.4f", t.slope) + ", residual " + fmt("%.4f", t.max_residual));
}

// Quasi-action defect.
void c5(Outcome& o) {
  const PointSet p = quad_line(120);
  const auto w = find_ag3_witness(p, delone_parameters(p).covering_radius);
  const double delta = witness_delta(w.F);
  const auto rep = quasi_action_defect(p, w.F, 2, 2, 1000, 7, 5, 40);
  o.require(rep.samples >= 1000, ">= 1000 triples");
  o.require(rep.violations == 0, "zero violations");
  o.require(std::abs(rep.delta - delta) <= 1e-12, "delta from the stored F");
  o.require(std::abs(rep.bound - 16 * delta) <= 1e-12 && rep.max_defect <= rep.bound, "defect <= 4(k+l) delta");
  o.note("delta " + fmt("%.6f", delta) + ", max defect " + fmt("%.6f", rep.max_defect) + ", bound " +
         fmt("%.6f", rep.bound));
}

// BS(1,2) distortion.
void c6(Outcome& o) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = bs_distortion(n, 2);
    o.require(r.word_verified, "b^n a b^-n = a^(2^n) for n = " + std::to_string(n));
    o.require(r.unconstrained_bfs && *r.unconstrained_bfs <= 2 * n + 1, "BFS length <= 2n+1 at n = " + std::to_string(n));
  }
  int prev = 0;
  std::string row;
  for (int n = 8; n <= 14; ++n) {
    const auto r = bs_distortion(n, 2);
    o.require(r.constrained_length == std::min(1 << n, (1 << (n - 1)) + 2), "closed form at n = " + std::to_string(n));
    o.require(r.constrained_length >= prev, "constrained length monotone at n = " + std::to_string(n));
    o.require(r.constrained_length >= (1 << (n - 3)), "constrained length >= 2^(n-3) at n = " + std::to_string(n));
    o.require(r.unconstrained_upper <= 2 * n + 1 && r.word_verified, "unconstrained bound at n = " + std::to_string(n));
    prev = r.constrained_length;
    row += (row.empty() ? "" : ",") + std::to_string(r.constrained_length);
  }
  o.note("constrained lengths n=8..14: " + row);
}

// Fish averages and catalog.
void c7(Outcome& o) {
  const PointSet fish = fish_set(30);
  const auto f = gap_two_detector();
  const std::int64_t i = 30;
  const double s = 5.0 * static_cast<double>(i * (i - 1) / 2);
  const auto a2 = ergodic_average(fish, f, WindowFamily{at(s + i), {5, 10, 28}, AverageMode::LatticePoints, 0});
  const auto a3 = ergodic_average(fish, f, WindowFamily{at(s + 3.5 * i), {5, 10, 42}, AverageMode::LatticePoints, 0});
  const double gap = a2.back().average - a3.back().average;
  o.require(gap >= 0.5, "2-block and 3-block averages differ by >= 0.5");

  const auto stats = transversal_stats(fish, 7);
  const auto has = [&](std::int64_t step) {
    std::vector<std::int64_t> want;
    for (std::int64_t v = -(7 / step) * step; v <= 7; v += step) want.push_back(v);
    for (const auto& e : stats.catalog) {
      std::vector<std::int64_t> pts;
      for (const auto& g : e.patch.points) pts.push_back(line_a(g));
      std::sort(pts.begin(), pts.end());
      if (pts == want) return true;
    }
    return false;
  };
  o.require(has(2), "all-gap-2 patch at rho = 7");
  o.require(has(3), "all-gap-3 patch at rho = 7");
  o.note("averages " + fmt("%.3f", a2.back().average) + " vs " + fmt("%.3f", a3.back().average) + ", " +
         std::to_string(stats.catalog.size()) + " patch types");
}

// Periodization inequality.
void c8(Outcome& o) {
  std::size_t samples = 0, violations = 0;
  const auto run = [&](const std::string& name, const PointSet& p, double bump, double t_radius, int g_steps) {
    const auto w = find_ag3_witness(p, delone_parameters(p).covering_radius);
    std::vector<GroupElem> ts = p.within(t_radius);
    std::vector<Coords> gs;
    for (int k = -g_steps; k <= g_steps; ++k) gs.push_back(at(k * 0.25));
    const auto rep = unimodularity_inequality_check(p, w.F, w.verified_core_radius, triangle(0, bump), ts, gs);
    samples += rep.samples;
    violations += rep.violations;
    o.require(rep.holds(), "zero violations on " + name);
  };
  run("Z", integer_lattice(60), 1.7, 5, 80);
  run("fish", fish_set(12), 2.5, 20, 80);
  run("quad-line", quad_line(200), 1.5, 10, 60);
  o.note(std::to_string(samples) + " samples, " + std::to_string(violations) + " violations");
}

// Cartan gaps.
void c9(Outcome& o) {
  std::vector<GroupElem> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(SL2Elem::diag(i * 0.25));
  const auto a = cartan_syndetic(grid);
  o.require(a.violations.empty(), "diagonal grid");
  std::vector<GroupElem> ball;
  for (const auto& e : word_ball(WordGroup::sl2z(), 6)) ball.push_back(e.g);
  const auto b = cartan_syndetic(ball);
  o.require(b.violations.empty(), "SL2(Z) ball of radius 6");
  o.note("max gaps " + fmt("%.4f", a.max_gap) + " / " + fmt("%.4f", b.max_gap) + ", ball size " +
         std::to_string(ball.size()));
}

// Affine walk.
void c10(Outcome& o) {
  AffineWalkConfig det{{AffineStep{1, -1, 1}}, 0, 1, 60};
  const auto wd = simulate_series(det);
  const double oracle = 1 / (1 - std::exp(-1.0));
  o.require(std::abs(wd.trajectories[0].B.back() - oracle) <= 1e-6, "deterministic limit within 1e-6");

  AffineWalkConfig mu{{AffineStep{1, -1, 0.5}, AffineStep{-0.5, 0.2, 0.5}}, 1, 1000, 60};
  const auto w1 = simulate_series(mu);
  const auto rep = convergence_report(w1, mu.max_abs_b());
  o.require(rep.trials >= 1000, ">= 1000 trials");
  o.require(rep.fitted_ratio <= rep.q + 0.05, "fitted ratio <= q + 0.05");
  o.require(trajectory_csv(w1) == trajectory_csv(simulate_series(mu)), "byte-identical rerun");
  AffineWalkConfig other = mu;
  other.seed = 2;
  o.require(trajectory_csv(simulate_series(other)) != trajectory_csv(w1), "seeds give distinct runs");
  o.note("B_60 - limit " + fmt("%.2e", wd.trajectories[0].B.back() - oracle) + ", q " + fmt("%.4f", rep.q) +
         ", fitted " + fmt("%.4f", rep.fitted_ratio));
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  void (*body)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "model set axioms", 10, c1},        {2, "discreteness chain", 60, c2},
    {3, "visible points negative control", 30, c3}, {4, "Milnor-Schwarz growth", 60, c4},
    {5, "quasi-action defect", 30, c5},     {6, "BS(1,2) distortion", 120, c6},
    {7, "Fish ergodic averages", 10, c7},   {8, "periodization inequality", 30, c8},
    {9, "Cartan gaps", 30, c9},             {10, "affine walk", 30, c10},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const Error& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.notes.push_back("runtime " + fmt("%.2f", secs) + " s over the " + fmt("%.0f", c.limit_seconds) + " s limit");
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s criterion %d (%s) %.2fs: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
