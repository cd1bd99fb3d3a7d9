#include <doctest.h>

#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

#include <alat/cutproject.hpp>
#include <alat/error.hpp>
#include <alat/ggt.hpp>
#include <alat/verify.hpp>

#include "gen.hpp"

using namespace alat;

namespace {

PointSet model_line(double R, double w = 5) {
  return enumerate(Scheme{SchemeFamily::QuadraticLine, 2, Window::symmetric_box(1, w)}, R);
}

std::unordered_map<GroupElem, int> ball_map(const WordGroup& G, int r) {
  std::unordered_map<GroupElem, int> m;
  for (const auto& e : word_ball(G, r)) m.emplace(e.g, e.dist);
  return m;
}

}  // namespace

TEST_CASE("word balls") {
  const auto z2 = WordGroup::z_powers(2);
  const auto e = word_ball(z2, 0);
  REQUIRE(e.size() == 1);
  CHECK(is_identity(e.front().g));
  for (int n = 1; n <= 12; ++n) CHECK(word_ball(z2, n).size() == static_cast<std::size_t>(2 * n * n + 2 * n + 1));

  const auto bs = ball_map(WordGroup::bs12(), 9);
  CHECK(bs.at(BSElem::gen_a(4)) == 4);
  for (int n = 0; n <= 4; ++n) CHECK(bs.at(BSElem::gen_a(std::int64_t{1} << n)) <= 2 * n + 1);

  CHECK_THROWS_AS(word_ball(WordGroup::heis_z(), 40, 1000), BudgetExceeded);
  WordGroup broken = WordGroup::bs12();
  broken.S.pop_back();
  CHECK_THROWS_AS(word_ball(broken, 2), InvalidArgument);
}

TEST_CASE("word metrics satisfy the metric axioms") {
  struct Case {
    WordGroup G;
    int radius;
  };
  const std::vector<Case> cases{{WordGroup::z_powers(2), 12}, {WordGroup::heis_z(), 9}, {WordGroup::bs12(), 9},
                                {WordGroup::quad_ring_additive(2), 12}, {WordGroup::sl2z(), 9}};
  test::Gen gen(31);
  for (const auto& c : cases) {
    const auto ball = word_ball(c.G, c.radius);
    const auto dist = ball_map(c.G, c.radius);
    std::vector<GroupElem> inner;
    for (const auto& b : ball)
      if (b.dist <= c.radius / 3) inner.push_back(b.g);
    auto d = [&](const GroupElem& x, const GroupElem& y) { return dist.at(mul(inverse(x), y)); };
    for (int i = 0; i < 1000; ++i) {
      const auto& x = inner[gen.integer(0, static_cast<std::int64_t>(inner.size()) - 1)];
      const auto& y = inner[gen.integer(0, static_cast<std::int64_t>(inner.size()) - 1)];
      const auto& z = inner[gen.integer(0, static_cast<std::int64_t>(inner.size()) - 1)];
      CHECK(d(x, y) == d(y, x));
      CHECK(d(x, z) <= d(x, y) + d(y, z));
      CHECK((d(x, y) == 0) == (x == y));
    }
    CHECK(word_distance(c.G, inner.front(), inner.back()) == d(inner.front(), inner.back()));
  }
  // Z[sqrt2] with {+-1, +-sqrt2}: distance is |a| + |b|.
  for (const auto& b : word_ball(WordGroup::quad_ring_additive(2), 8)) {
    const auto& q = std::get<EuclidElem>(b.g)[0];
    CHECK(b.dist == std::abs(q.a()) + std::abs(q.b()));
  }
}

TEST_CASE("Milnor-Schwarz rho on the integers") {
  const PointSet z = integer_lattice(40);
  const auto F = square_ball(z, 1.5);
  const auto t = ms_rho(z, 2, F, 10);
  REQUIRE(t.rows.size() == 11);
  for (const auto& [n, r] : t.rows) CHECK(r == 2 * n);
  CHECK(t.slope == doctest::Approx(2));
  CHECK(t.max_residual == doctest::Approx(0).epsilon(1e-9));
  CHECK_THROWS_AS(ms_rho(z, 5, F, 10), CoreViolation);
}

TEST_CASE("Milnor-Schwarz rho on the quadratic model set") {
  const PointSet p = model_line(60);
  const double R = delone_parameters(p).covering_radius;
  const double K = 3 * R;
  const auto F = square_ball(p, K);
  const auto t = ms_rho(p, K, F, 10);
  CHECK(t.rows.front().second == 0);
  CHECK(t.nondecreasing());
  CHECK(t.affine_within(2));
  for (const auto& [n, r] : t.rows) CHECK(t.slope * n + t.shadow_intercept >= r - 1e-9);

  // BFS oracle in (a, b) coordinates.
  std::vector<std::pair<std::int64_t, std::int64_t>> gens;
  for (const auto& f : F) {
    const auto& q = std::get<EuclidElem>(f)[0];
    if (!q.is_zero()) gens.emplace_back(q.a(), q.b());
  }
  std::map<std::pair<std::int64_t, std::int64_t>, int> dist{{{0, 0}, 0}};
  std::deque<std::pair<std::int64_t, std::int64_t>> queue{{0, 0}};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    const int dc = dist[cur];
    if (dc >= t.rows.back().second) continue;
    for (const auto& g : gens) {
      const std::pair<std::int64_t, std::int64_t> nxt{cur.first + g.first, cur.second + g.second};
      if (dist.emplace(nxt, dc + 1).second) queue.push_back(nxt);
    }
  }
  for (const auto& [n, r] : t.rows) {
    int oracle = 0;
    for (const auto& x : p.within(n * K)) {
      const auto& q = std::get<EuclidElem>(x)[0];
      oracle = std::max(oracle, dist.at({q.a(), q.b()}));
    }
    CHECK(oracle == r);
  }
}

TEST_CASE("retraction and quasi-action") {
  const PointSet z = integer_lattice(50);
  for (std::int64_t v = -20; v <= 20; v += 7) {
    const GroupElem x = EuclidElem::integer(v);
    CHECK(retraction(z, x, 2, 0) == x);
    CHECK(quasi_action_apply(z, EuclidElem::integer(5), x, 1, 0) == GroupElem{EuclidElem::integer(v + 5)});
    CHECK(quasi_action_apply(z, z.identity(), x, 1, 0) == x);
  }

  const PointSet p = model_line(80);
  const auto w = find_ag3_witness(p, delone_parameters(p).covering_radius);
  const double delta = witness_delta(w.F);
  for (const auto& x : p.within(30)) CHECK(retraction(p, x, 1, delta) == x);
  const auto small = p.within(10);
  for (const auto& x : small) {
    for (const auto& y : small) {
      const GroupElem s = mul(x, y);
      const GroupElem r = retraction(p, s, 2, delta);
      double oracle = INFINITY;
      for (const auto& q : p.points) oracle = std::min(oracle, distance(s, q));
      CHECK(distance(s, r) == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(distance(s, r) <= delta + 1e-9);
    }
  }
  CHECK_THROWS_AS(retraction(p, EuclidElem::line(QuadInt(80, 0, 2)), 2, delta), CoreViolation);

  const auto rep = quasi_action_defect(p, w.F, 2, 2, 1000, 7, 5, 40);
  CHECK(rep.samples == 1000);
  CHECK(rep.violations == 0);
  CHECK(rep.bound == doctest::Approx(16 * delta));
  CHECK(rep.max_defect <= rep.bound);
}

TEST_CASE("Freiman checks") {
  const PointSet small = integer_point_set({-1, 0, 1}, 1);
  const auto id = freiman_check({FreimanMapKind::Identity}, 3, small);
  CHECK(id.is_freiman);

  // Exhaustive oracle for x -> x mod 2 on {-1, 0, 1}, k = 2.
  auto m2 = [](int x) { return ((x % 2) + 2) % 2; };
  bool oracle = true;
  for (int a : {-1, 0, 1})
    for (int b : {-1, 0, 1})
      for (int c : {-1, 0, 1})
        for (int d : {-1, 0, 1})
          if (a + b == c + d && (m2(a) + m2(b)) % 2 != (m2(c) + m2(d)) % 2) oracle = false;
  CHECK(freiman_check({FreimanMapKind::ModN, 2}, 2, small).is_freiman == oracle);

  const auto abs = freiman_check({FreimanMapKind::AbsValue}, 2, small);
  REQUIRE_FALSE(abs.is_freiman);
  CHECK(mul(abs.lhs[0], abs.lhs[1]) == mul(abs.rhs[0], abs.rhs[1]));

  const PointSet p = model_line(6);
  CHECK(freiman_check({FreimanMapKind::RationalPart}, 3, p).is_freiman);
  CHECK(freiman_check({FreimanMapKind::Star}, 3, p).is_freiman);
  CHECK_FALSE(freiman_check({FreimanMapKind::AbsValue}, 2, p).is_freiman);
  CHECK_THROWS_AS(freiman_check({FreimanMapKind::Identity}, 6, p, 1000), BudgetExceeded);

  const PointSet h = enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1)}, 1.5);
  CHECK(freiman_check({FreimanMapKind::Identity}, 2, h).is_freiman);
  CHECK_THROWS_AS(freiman_check({FreimanMapKind::Star}, 2, h), InvalidArgument);
}

TEST_CASE("BS(1,2) distortion") {
  const auto zero = bs_distortion(0, 2);
  CHECK(zero.constrained_length == 1);
  CHECK(zero.unconstrained_bfs == 1);
  for (int n = 1; n <= 4; ++n) {
    const auto r = bs_distortion(n, 4);
    CHECK(r.word_verified);
    CHECK(r.unconstrained_upper == 2 * n + 1);
    REQUIRE(r.unconstrained_bfs.has_value());
    CHECK(*r.unconstrained_bfs <= 2 * n + 1);
    CHECK(r.constrained_length <= 2 * n + 1);
  }
  for (int n = 1; n <= 10; ++n) {
    CHECK(bs_distortion(n, 1).constrained_length == (1 << n));
    CHECK(bs_distortion(n, 2).constrained_length == std::min(1 << n, (1 << (n - 1)) + 2));
  }
  CHECK_THROWS_AS(bs_distortion(25, 2), InvalidArgument);
  CHECK_THROWS_AS(bs_distortion(12, 2, 100), BudgetExceeded);
}

TEST_CASE("Folner ratios") {
  const PointSet z = integer_lattice(60);
  const auto rows = folner_report(z, 1.5, {5, 10, 20});
  for (const auto& r : rows) CHECK(r.ratio == doctest::Approx(4.0 / (2 * r.radius + 1)));
  CHECK(folner_evidence(rows, 0.2));

  const PointSet f = fish_set(12);
  const auto fr = folner_report(f, 3.5, {10, 40, 100, 200});
  CHECK(folner_evidence(fr, 0.1));

  for (const auto& r : folner_report(f, 1.5, {20, 50})) CHECK(r.boundary == 0);
  CHECK_THROWS_AS(folner_report(z, 1.5, {60}), CoreViolation);
}

TEST_CASE("Cartan gaps") {
  std::vector<GroupElem> grid;
  for (int t = 0; t <= 10; ++t) grid.push_back(SL2Elem::diag(t));
  const auto rep = cartan_syndetic(grid);
  REQUIRE(rep.gaps.size() == 10);
  for (double g : rep.gaps) CHECK(g == doctest::Approx(1).epsilon(1e-9));
  CHECK(rep.violations.empty());

  CHECK(cartan_syndetic({SL2Elem::diag(2), SL2Elem::diag(2)}).gaps.empty());
  CHECK_THROWS_AS(cartan_syndetic({SL2Elem{}}), InvalidArgument);
  CHECK_THROWS_AS(cartan_syndetic({SL2Elem{}, BSElem{}}), InvalidArgument);

  std::vector<GroupElem> ball;
  for (const auto& e : word_ball(WordGroup::sl2z(), 6)) ball.push_back(e.g);
  const auto br = cartan_syndetic(ball);
  CHECK(br.violations.empty());
  for (double g : br.gaps) CHECK(g <= br.max_gap);

  test::Gen gen(32);
  for (int i = 0; i < 200; ++i) {
    const SL2Elem g = gen.sl2();
    const SL2Elem k1 = SL2Elem::rotation(gen.real(0, 6.3)), k2 = SL2Elem::rotation(gen.real(0, 6.3));
    CHECK(cartan_t(sl2_mul(sl2_mul(k1, g), k2)).t == doctest::Approx(cartan_t(g).t).epsilon(1e-7));
  }
}
