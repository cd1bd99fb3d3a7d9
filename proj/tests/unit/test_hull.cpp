#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <alat/cutproject.hpp>
#include <alat/error.hpp>
#include <alat/hull.hpp>
#include <alat/point_index.hpp>
#include <alat/verify.hpp>

#include "gen.hpp"

using namespace alat;

namespace {

PointSet model_line(double R, double w = 5) {
  return enumerate(Scheme{SchemeFamily::QuadraticLine, 2, Window::symmetric_box(1, w)}, R);
}

std::vector<std::int64_t> integer_values(const PointSet& p) {
  std::vector<std::int64_t> v;
  for (const auto& g : p.points) v.push_back(std::get<EuclidElem>(g)[0].a());
  std::sort(v.begin(), v.end());
  return v;
}

Coords at(double x, double y = 0, double z = 0) { return Coords{x, y, z}; }

TestFunction triangle(double c, double r, double h = 1) {
  Bump b;
  b.center = at(c);
  b.radius = r;
  b.height = h;
  return TestFunction::bump(Ambient::Line, b);
}

double total_frequency(const PatchStats& s) {
  double t = 0;
  for (const auto& e : s.catalog) t += e.frequency;
  return t;
}

/// Start of the i-th block of 2-gaps on the positive half of a Fish set.
std::int64_t fish_block_start(std::int64_t i) {
  std::int64_t s = 0;
  for (std::int64_t j = 1; j < i; ++j) s += 5 * j;
  return s;
}

}  // namespace

TEST_CASE("transversal statistics of the integers") {
  const auto s = transversal_stats(integer_lattice(40), 1.5);
  REQUIRE(s.catalog.size() == 1);
  CHECK(s.catalog[0].frequency == 1.0);
  CHECK(s.catalog[0].patch.points.size() == 3);
  CHECK_THROWS_AS(transversal_stats(integer_lattice(40), 21), InvalidArgument);
}

TEST_CASE("Fish patch frequencies match a direct gap-pair scan") {
  const PointSet fish = fish_set(9);
  const double rho = 3.5;
  const auto s = transversal_stats(fish, rho);
  CHECK(total_frequency(s) == doctest::Approx(1.0).epsilon(1e-12));

  const auto v = integer_values(fish);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> scan;
  std::size_t centers = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (static_cast<double>(std::abs(v[i])) > fish.core_radius - rho) continue;
    ++scan[{v[i] - v[i - 1], v[i + 1] - v[i]}];
    ++centers;
  }
  CHECK(s.centers == centers);
  REQUIRE(s.catalog.size() == scan.size());
  for (const auto& [gaps, count] : scan) {
    Patch p;
    p.points = {GroupElem{EuclidElem::integer(-gaps.first)}, GroupElem{EuclidElem::integer(0)},
                GroupElem{EuclidElem::integer(gaps.second)}};
    std::sort(p.points.begin(), p.points.end());
    CHECK(s.frequency_of(p) == doctest::Approx(static_cast<double>(count) / static_cast<double>(centers)));
  }
}

TEST_CASE("model set patch frequencies stabilise") {
  const auto a = transversal_stats(model_line(200), 2);
  const auto b = transversal_stats(model_line(400), 2);
  CHECK(total_frequency(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(total_frequency(b) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& e : b.catalog) CHECK(e.count > 0);
  CHECK(max_frequency_difference(a, b) <= 0.02);
  CHECK(max_frequency_difference(a, a) == 0);
}

TEST_CASE("patch differences lie in the difference set") {
  CHECK(patch_difference_violations(fish_set(8), transversal_stats(fish_set(8), 7)).empty());
  const PointSet q = model_line(120);
  CHECK(patch_difference_violations(q, transversal_stats(q, 3)).empty());
  const PointSet h = enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1.5)}, 3);
  CHECK(patch_difference_violations(h, transversal_stats(h, 1)).empty());
}

TEST_CASE("test function descriptors") {
  const auto f = triangle(1, 2, 3);
  CHECK(f(at(1)) == 3);
  CHECK(f(at(2)) == doctest::Approx(1.5));
  CHECK(f(at(3)) == 0);
  CHECK(f.support_radius() == 3);
  Bump b;
  b.radius = 2;
  b.profile = BumpProfile::SmoothedIndicator;
  b.plateau = 0.5;
  const auto g = TestFunction::bump(Ambient::Line, b);
  CHECK(g(at(0.9)) == 1);
  CHECK(g(at(1.5)) == doctest::Approx(0.5));
  CHECK(g(at(-2)) == 0);
  CHECK(bump_profile_from_name(bump_profile_name(BumpProfile::SmoothedIndicator)) == BumpProfile::SmoothedIndicator);
  CHECK_THROWS_AS(bump_profile_from_name("gauss"), InvalidArgument);
  b.radius = 0;
  CHECK_THROWS_AS(TestFunction::bump(Ambient::Line, b).validate(), InvalidArgument);
  const TestFunction planar{Ambient::Plane, {}};
  CHECK_THROWS_AS(triangle(0, 1) + planar, InvalidArgument);
}

TEST_CASE("periodization on the integers") {
  const PointSet z = integer_lattice(30);
  CHECK(periodize(triangle(0, 0.5), z, {at(0)})[0] == 1);
  // Each translate sees the two neighbours of a half-integer at height 1/2.
  CHECK(periodize(triangle(0, 1), z, {at(0.5)})[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(periodize(triangle(0, 5), z, {at(28)}), CoreViolation);
  Bump b;
  const auto planar = TestFunction::bump(Ambient::Plane, b);
  CHECK_THROWS_AS(periodize(planar, z, {at(0)}), InvalidArgument);
}

TEST_CASE("periodization is linear and equivariant") {
  test::Gen gen(11);
  const PointSet q = model_line(80);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = triangle(gen.real(-3, 3), gen.real(0.3, 4), gen.real(0, 2));
    const auto g = triangle(gen.real(-3, 3), gen.real(0.3, 4), gen.real(0, 2));
    std::vector<Coords> ts;
    for (int i = 0; i < 5; ++i) ts.push_back(at(gen.real(-40, 40)));
    const auto pf = periodize(f, q, ts), pg = periodize(g, q, ts), pfg = periodize(f + g, q, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(pfg[i] == doctest::Approx(pf[i] + pg[i]).epsilon(1e-12));
      const double moved = periodize(f.left_translate(ts[i]), q, {at(0)})[0];
      CHECK(moved == doctest::Approx(pf[i]).epsilon(1e-12));
    }
  }

  const PointSet h = enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 2)}, 5);
  Bump b;
  b.center = at(0.2, -0.1, 0.1);
  b.radius = 1.0;
  const auto fh = TestFunction::bump(Ambient::Heisenberg, b);
  for (int trial = 0; trial < 10; ++trial) {
    const Coords g = at(gen.real(-0.5, 0.5), gen.real(-0.5, 0.5), gen.real(-0.5, 0.5));
    const double direct = periodize(fh, h, {g})[0];
    double oracle = 0;
    for (const auto& x : h.points) oracle += fh(float_mul(Ambient::Heisenberg, g, embed(x)));
    CHECK(direct == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(periodize(fh.left_translate(g), h, {at(0)})[0] == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("periodization is bounded by the local finiteness constant") {
  test::Gen gen(5);
  const PointSet fish = fish_set(8);
  const auto f = triangle(0.5, 2.5, 1.5);
  const double K = 2 * f.support_radius();
  const auto prof = local_finiteness_profile(fish, 1, K, 0, 0);
  std::vector<Coords> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(at(gen.real(-100, 100)));
  for (double v : periodize(f, fish, ts)) CHECK(v <= static_cast<double>(prof.c_k) * f.sup_bound());
}

TEST_CASE("unimodularity inequality on the integers") {
  const PointSet z = integer_lattice(60);
  const auto f = triangle(0.2, 1.7);
  std::vector<GroupElem> ts;
  for (int t = -5; t <= 5; ++t) ts.push_back(EuclidElem::integer(t));
  std::vector<Coords> gs;
  for (int i = -20; i <= 20; ++i) gs.push_back(at(i * 0.37));
  const auto rep = unimodularity_inequality_check(z, {EuclidElem::integer(0)}, 30, f, ts, gs);
  CHECK(rep.samples == ts.size() * gs.size());
  CHECK(rep.holds());
  CHECK(std::abs(rep.min_slack) <= 1e-12);
  CHECK(std::abs(rep.max_slack) <= 1e-12);
  CHECK_THROWS_AS(unimodularity_inequality_check(z, {EuclidElem::integer(0)}, 3, f, ts, gs), CoreViolation);
  CHECK_THROWS_AS(unimodularity_inequality_check(z, {EuclidElem::integer(0)}, 30, triangle(0, 1, -1), ts, gs),
                  InvalidArgument);
}

TEST_CASE("unimodularity inequality with computed witnesses") {
  SUBCASE("Fish") {
    const PointSet fish = fish_set(12);
    const auto w = find_ag3_witness(fish, delone_parameters(fish).covering_radius);
    const auto f = triangle(0, 2.5);
    std::vector<GroupElem> ts;
    for (const auto& x : fish.within(20)) ts.push_back(x);
    std::vector<Coords> gs;
    for (int i = -80; i <= 80; ++i) gs.push_back(at(i * 0.25));
    const auto rep = unimodularity_inequality_check(fish, w.F, w.verified_core_radius, f, ts, gs);
    CHECK(rep.samples == ts.size() * gs.size());
    CHECK(rep.holds());
  }
  SUBCASE("quadratic model set") {
    const PointSet q = model_line(200);
    const auto w = find_ag3_witness(q, delone_parameters(q).covering_radius);
    const auto f = triangle(0, 1.5);
    std::vector<GroupElem> ts;
    for (const auto& x : q.within(10)) ts.push_back(x);
    std::vector<Coords> gs;
    for (int i = -60; i <= 60; ++i) gs.push_back(at(i * 0.25));
    const auto rep = unimodularity_inequality_check(q, w.F, w.verified_core_radius, f, ts, gs);
    CHECK(rep.samples > 1000);
    CHECK(rep.holds());
  }
  SUBCASE("a witness that is too small is caught") {
    const PointSet fish = fish_set(6);
    std::vector<GroupElem> ts{EuclidElem::integer(2)};
    const auto rep = unimodularity_inequality_check(fish, {EuclidElem::integer(0)}, 20, triangle(0, 0.5), ts,
                                                    {at(-4)});
    CHECK_FALSE(rep.holds());
    REQUIRE(rep.first_violation);
    CHECK(rep.first_violation->lhs == 1);
    CHECK(rep.first_violation->rhs == 0);
  }
}

TEST_CASE("ergodic averages") {
  SUBCASE("integers are constant") {
    const PointSet z = integer_lattice(100);
    for (auto mode : {AverageMode::LatticePoints, AverageMode::Grid}) {
      WindowFamily w{at(3), {5, 10, 20, 40}, mode, 0.125};
      const auto f = triangle(0.3, 0.8);
      const auto avg = ergodic_average(z, f, w);
      for (const auto& a : avg) CHECK(a.average == doctest::Approx(avg[0].average).epsilon(0.02));
    }
    WindowFamily lp{at(0), {1, 2, 3}, AverageMode::LatticePoints, 0};
    for (const auto& a : ergodic_average(z, triangle(0.3, 0.8), lp)) CHECK(a.average == doctest::Approx(0.625 + 0.125));
  }
  SUBCASE("Fish limits depend on the block") {
    const PointSet fish = fish_set(30);
    const auto f = gap_two_detector();
    const std::int64_t i = 30;
    const double s = static_cast<double>(fish_block_start(i));
    WindowFamily twos{at(s + i), {5, 10, static_cast<double>(i - 2)}, AverageMode::LatticePoints, 0};
    WindowFamily threes{at(s + 3.5 * i), {5, 10, 1.5 * i - 3}, AverageMode::LatticePoints, 0};
    const auto a2 = ergodic_average(fish, f, twos);
    const auto a3 = ergodic_average(fish, f, threes);
    for (const auto& a : a2) CHECK(a.average == 1.0);
    for (const auto& a : a3) CHECK(a.average == 0.0);
    CHECK(a2.back().average - a3.back().average >= 0.5);
  }
  SUBCASE("model set averages agree across disjoint windows") {
    const PointSet q = model_line(400);
    const auto f = triangle(1, 1.5);
    for (auto mode : {AverageMode::LatticePoints, AverageMode::Grid}) {
      const auto left = ergodic_average(q, f, WindowFamily{at(-200), {50, 100, 180}, mode, 0.05});
      const auto right = ergodic_average(q, f, WindowFamily{at(200), {50, 100, 180}, mode, 0.05});
      CHECK(std::abs(left.back().average - right.back().average) <= 0.02);
    }
  }
  SUBCASE("invalid windows") {
    const PointSet z = integer_lattice(20);
    CHECK_THROWS_AS(ergodic_average(z, triangle(0, 1), WindowFamily{at(0), {5, 3}, AverageMode::Grid, 0.1}),
                    InvalidArgument);
    CHECK_THROWS_AS(ergodic_average(z, triangle(0, 1), WindowFamily{at(0), {25}, AverageMode::Grid, 0.1}),
                    CoreViolation);
  }
}

TEST_CASE("point-free windows") {
  double last = 0;
  for (int k = 1; k <= 3; ++k) {
    const auto h = visible_hole(k);
    CHECK(h.verified);
    CHECK(h.radius > last);
    last = h.radius;
    for (std::int64_t a = 0; a < k; ++a)
      for (std::int64_t b = 0; b < k; ++b) CHECK(gcd_abs(h.x + a, h.y + b) > 1);
  }
  CHECK_THROWS_AS(visible_hole(4), InvalidArgument);

  test::Gen gen(3);
  for (const PointSet& p : {fish_set(8), model_line(100)}) {
    const double R = delone_parameters(p).covering_radius;
    PointIndex index(p);
    for (int i = 0; i < 300; ++i) {
      const double c = gen.real(-p.core_radius / 2, p.core_radius / 2);
      CHECK_FALSE(index.ball(at(c), R + 1e-9).empty());
    }
  }
}
