#include <doctest.h>

#include <alat/cutproject.hpp>
#include <alat/error.hpp>
#include <alat/io.hpp>

using namespace alat;

namespace {

void check_same(const PointSet& a, const PointSet& b) {
  CHECK(a.family == b.family);
  CHECK(a.ambient == b.ambient);
  CHECK(a.d == b.d);
  CHECK(a.enum_radius == b.enum_radius);
  CHECK(a.core_radius == b.core_radius);
  CHECK(a.points == b.points);
  CHECK(a.provenance == b.provenance);
  CHECK(a.scheme.has_value() == b.scheme.has_value());
  if (a.scheme && b.scheme) {
    CHECK(a.scheme->family == b.scheme->family);
    CHECK(a.scheme->window == b.scheme->window);
  }
}

int parse_line_of(std::string_view text) {
  try {
    pointset_from_csv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("point set CSV round trips") {
  for (const PointSet& p : {fish_set(5), integer_lattice(7),
                            enumerate(Scheme{SchemeFamily::QuadraticLine, 3, Window::parse("-2.5,4.25")}, 30),
                            enumerate(Scheme{SchemeFamily::QuadraticPlane, 2, Window::symmetric_box(2, 2)}, 6),
                            enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1.5)}, 3)}) {
    const std::string text = pointset_to_csv(p);
    const PointSet q = pointset_from_csv(text);
    check_same(p, q);
    CHECK(pointset_to_csv(q) == text);
  }
}

TEST_CASE("Heisenberg rows keep every exact pair") {
  const PointSet h = enumerate(Scheme{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1.5)}, 3);
  const std::string text = pointset_to_csv(h);
  CHECK(text.find("x.a,x.b,y.a,y.b,z.a,z.b,x,y,z\n") != std::string::npos);
  const PointSet q = pointset_from_csv(text);
  REQUIRE(q.points.size() == h.points.size());
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const auto& a = std::get<HeisElem>(h.points[i]);
    const auto& b = std::get<HeisElem>(q.points[i]);
    CHECK(a.x.a() == b.x.a());
    CHECK(a.x.b() == b.x.b());
    CHECK(a.y.a() == b.y.a());
    CHECK(a.y.b() == b.y.b());
    CHECK(a.z.a() == b.z.a());
    CHECK(a.z.b() == b.z.b());
  }
}

TEST_CASE("malformed point set files are rejected with positions") {
  const std::string good = pointset_to_csv(integer_lattice(2));
  CHECK(parse_line_of(good) == -1);

  std::string core = good;
  core.replace(core.find("# coreRadius: 2"), 15, "# coreRadius: 9");
  try {
    pointset_from_csv(core);
    FAIL("coreRadius > enumRadius accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 15);
  }

  std::string bad_int = good;
  bad_int.replace(bad_int.rfind("\n2,0,2\n"), 7, "\n2,x,2\n");
  try {
    pointset_from_csv(bad_int);
    FAIL("bad integer accepted");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
  }

  std::string bad_embed = good;
  bad_embed.replace(bad_embed.rfind("\n2,0,2\n"), 7, "\n2,0,2.5\n");
  CHECK_THROWS_AS(pointset_from_csv(bad_embed), ParseError);

  CHECK(parse_line_of("") == 1);
  CHECK(parse_line_of("x.a,x.b,x\n") == 1);
  CHECK(parse_line_of("# alat-pointset: 2\n") == 1);
  CHECK(parse_line_of("# alat-pointset: 1\n# colour: red\n") == 2);
  CHECK(parse_line_of("# alat-pointset: 1\n# family: line\n") == 2);
  CHECK(parse_line_of("# alat-pointset: 1\n# enumRadius: 1\n# coreRadius: 1\nx.a,x.b,x\n1,0\n") == 5);
  CHECK(parse_line_of("# alat-pointset: 1\n# d: 4\n# enumRadius: 1\n# coreRadius: 1\nx.a,x.b,x\n1,1,3\n") == 6);
  CHECK_THROWS_AS(load_pointset("/nonexistent/points.csv"), InvalidArgument);
}

TEST_CASE("files round trip through disk") {
  const std::string path = "io_roundtrip_test.csv";
  const PointSet p = fish_set(4);
  save_pointset(p, path);
  check_same(p, load_pointset(path));
  std::remove(path.c_str());
}
