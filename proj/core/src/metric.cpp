#include "alat/metric.hpp"

#include <cmath>
#include <string>

#include "alat/error.hpp"

namespace alat {

std::string_view ambient_name(Ambient a) noexcept {
  switch (a) {
    case Ambient::Line: return "line";
    case Ambient::Plane: return "plane";
    case Ambient::Heisenberg: return "heisenberg";
  }
  return "?";
}

Ambient ambient_from_name(std::string_view name) {
  if (name == "line") return Ambient::Line;
  if (name == "plane") return Ambient::Plane;
  if (name == "heisenberg") return Ambient::Heisenberg;
  throw InvalidArgument("unknown ambient '" + std::string(name) + "'");
}

Ambient ambient_of(const GroupElem& g) {
  if (const auto* e = std::get_if<EuclidElem>(&g)) {
    if (e->dim == 1) return Ambient::Line;
    if (e->dim == 2) return Ambient::Plane;
    throw InvalidArgument("no point-set ambient for R^3");
  }
  if (std::holds_alternative<HeisElem>(g)) return Ambient::Heisenberg;
  throw InvalidArgument("element kind has no point-set ambient metric");
}

Coords embed(const GroupElem& g) {
  if (const auto* e = std::get_if<EuclidElem>(&g)) {
    Coords c{0, 0, 0};
    for (std::size_t i = 0; i < e->dim; ++i) c[i] = e->coords[i].embedding();
    return c;
  }
  if (const auto* h = std::get_if<HeisElem>(&g)) {
    return Coords{h->x.embedding(), h->y.embedding(), h->z.embedding()};
  }
  throw InvalidArgument("element kind has no exact embedding");
}

double float_norm(Ambient ambient, const Coords& g) {
  switch (ambient) {
    case Ambient::Line: return std::abs(g[0]);
    case Ambient::Plane: return std::hypot(g[0], g[1]);
    case Ambient::Heisenberg:
      return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
  }
  return 0;
}

double float_distance(Ambient ambient, const Coords& g, const Coords& h) {
  switch (ambient) {
    case Ambient::Line: return std::abs(h[0] - g[0]);
    case Ambient::Plane: return std::hypot(h[0] - g[0], h[1] - g[1]);
    case Ambient::Heisenberg: {
      // g^-1 h = (h1-g1, h2-g2, h3-g3-g1(h2-g2))
      const double dx = h[0] - g[0];
      const double dy = h[1] - g[1];
      const double dz = h[2] - g[2] - g[0] * dy;
      return std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    }
  }
  return 0;
}

double norm(const GroupElem& g) {
  if (const auto* e = std::get_if<EuclidElem>(&g)) {
    if (e->dim == 1) return std::abs(e->coords[0].embedding());
    long double s = 0;
    for (std::size_t i = 0; i < e->dim; ++i) {
      const long double v = e->coords[i].embedding_ld();
      s += v * v;
    }
    return static_cast<double>(std::sqrt(s));
  }
  if (const auto* h = std::get_if<HeisElem>(&g)) {
    return std::max({std::abs(h->x.embedding()), std::abs(h->y.embedding()),
                     std::abs(h->z.embedding())});
  }
  throw InvalidArgument("element kind has no ambient metric");
}

double distance(const GroupElem& g, const GroupElem& h) { return norm(mul(inverse(g), h)); }

double compose_bound(Ambient ambient, double a, double b) noexcept {
  if (ambient == Ambient::Heisenberg) return a + b + a * b;
  return a + b;
}

double inverse_bound(Ambient ambient, double a) noexcept {
  if (ambient == Ambient::Heisenberg) return a + a * a;
  return a;
}

double compose_slack(Ambient ambient, double total, double b) noexcept {
  if (ambient == Ambient::Heisenberg) return (total - b) / (1 + b);
  return total - b;
}

}  // namespace alat
