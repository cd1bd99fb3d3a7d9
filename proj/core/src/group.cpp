#include "alat/group.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "alat/checked.hpp"
#include "alat/error.hpp"

namespace alat {

EuclidElem EuclidElem::zero(std::uint8_t dim, std::int64_t d) {
  if (dim < 1 || dim > 3) throw InvalidArgument("Euclidean dimension must be 1..3");
  EuclidElem e;
  e.dim = dim;
  for (auto& c : e.coords) c = QuadInt(0, 0, d);
  return e;
}

EuclidElem EuclidElem::line(const QuadInt& x) {
  EuclidElem e = zero(1, x.d());
  e.coords[0] = x;
  return e;
}

EuclidElem EuclidElem::integer(std::int64_t x, std::int64_t d) { return line(QuadInt(x, 0, d)); }

EuclidElem EuclidElem::plane(const QuadInt& x, const QuadInt& y) {
  if (x.d() != y.d()) throw RingMismatch("plane coordinates from different rings");
  EuclidElem e = zero(2, x.d());
  e.coords[0] = x;
  e.coords[1] = y;
  return e;
}

HeisElem HeisElem::identity(std::int64_t d) {
  return HeisElem{QuadInt(0, 0, d), QuadInt(0, 0, d), QuadInt(0, 0, d)};
}

SL2Elem SL2Elem::diag(double t) { return SL2Elem{std::exp(t / 2), 0, 0, std::exp(-t / 2)}; }

SL2Elem SL2Elem::rotation(double theta) {
  return SL2Elem{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
}

GroupKind kind_of(const GroupElem& g) noexcept { return static_cast<GroupKind>(g.index()); }

std::string_view kind_name(GroupKind k) noexcept {
  switch (k) {
    case GroupKind::Euclid: return "euclid";
    case GroupKind::Heis: return "heis";
    case GroupKind::SL2: return "sl2";
    case GroupKind::Aff: return "aff";
    case GroupKind::BS: return "bs";
  }
  return "?";
}

EuclidElem euclid_add(const EuclidElem& g, const EuclidElem& h) {
  if (g.dim != h.dim) throw InvalidArgument("Euclidean dimension mismatch");
  EuclidElem r = g;
  for (std::size_t i = 0; i < g.dim; ++i) r.coords[i] += h.coords[i];
  return r;
}

EuclidElem euclid_neg(const EuclidElem& g) {
  EuclidElem r = g;
  for (std::size_t i = 0; i < g.dim; ++i) r.coords[i] = -g.coords[i];
  return r;
}

HeisElem heis_mul(const HeisElem& g, const HeisElem& h) {
  return HeisElem{g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
}

HeisElem heis_inverse(const HeisElem& g) { return HeisElem{-g.x, -g.y, -g.z + g.x * g.y}; }

SL2Elem sl2_mul(const SL2Elem& g, const SL2Elem& h) {
  return SL2Elem{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
                 g.c * h.b + g.d * h.d};
}

SL2Elem sl2_inverse(const SL2Elem& g) { return SL2Elem{g.d, -g.b, -g.c, g.a}; }

AffElem aff_mul(const AffElem& g, const AffElem& h) {
  const double scale = std::exp(g.a);
  if (!std::isfinite(scale)) throw OverflowError("e^a overflow in affine product");
  AffElem r{g.b + scale * h.b, g.a + h.a};
  if (!std::isfinite(r.b)) throw OverflowError("translation overflow in affine product");
  return r;
}

AffElem aff_inverse(const AffElem& g) {
  const double scale = std::exp(-g.a);
  if (!std::isfinite(scale)) throw OverflowError("e^-a overflow in affine inverse");
  return AffElem{-scale * g.b, -g.a};
}

double aff_modular(const AffElem& g) { return std::exp(-g.a); }

namespace {

/// BS(1,2) as Z[1/2] x| Z: (num / 2^exp, shift) with exp minimal.
struct Dyadic {
  std::int64_t num;
  std::int64_t exp;
  std::int64_t shift;
};

void normalize(Dyadic& x) {
  while (x.exp > 0 && x.num % 2 == 0) {
    x.num /= 2;
    --x.exp;
  }
  if (x.num == 0) x.exp = 0;
}

Dyadic to_dyadic(std::int64_t p, std::int64_t m, std::int64_t q) {
  Dyadic x{m, p, checked::sub(q, p)};
  normalize(x);
  return x;
}

BSElem from_dyadic(const Dyadic& x) {
  const std::int64_t p = std::max<std::int64_t>({x.exp, -x.shift, 0});
  return BSElem{p, checked::shl(x.num, p - x.exp), checked::add(x.shift, p)};
}

}  // namespace

BSElem BSElem::normal(std::int64_t p, std::int64_t m, std::int64_t q) {
  if (p < 0 || q < 0) throw InvalidArgument("BS normal form needs p, q >= 0");
  if (p > 0 && q > 0 && m % 2 == 0)
    throw InvalidArgument("BS normal form needs m odd when p, q > 0");
  return BSElem{p, m, q};
}

BSElem BSElem::reduce(std::int64_t p, std::int64_t m, std::int64_t q) {
  if (p < 0 || q < 0) throw InvalidArgument("BS exponents must be nonnegative");
  return from_dyadic(to_dyadic(p, m, q));
}

BSElem BSElem::from_word(std::string_view word) {
  BSElem g;
  for (char c : word) {
    switch (c) {
      case 'a': g = bs_mul(g, gen_a(1)); break;
      case 'A': g = bs_mul(g, gen_a(-1)); break;
      case 'b': g = bs_mul(g, gen_b()); break;
      case 'B': g = bs_mul(g, gen_b_inv()); break;
      default: throw InvalidArgument(std::string("BS word letter must be one of aAbB, got '") + c + "'");
    }
  }
  return g;
}

BSElem bs_mul(const BSElem& g, const BSElem& h) {
  const Dyadic x = to_dyadic(g.p, g.m, g.q);
  const Dyadic y = to_dyadic(h.p, h.m, h.q);
  // (x, s)(y, t) = (x + 2^s y, s + t); 2^s y = y.num / 2^(y.exp - s).
  const std::int64_t ey = checked::sub(y.exp, x.shift);
  const std::int64_t e = std::max<std::int64_t>({x.exp, ey, 0});
  Dyadic r{checked::add(checked::shl(x.num, e - x.exp), checked::shl(y.num, e - ey)), e,
           checked::add(x.shift, y.shift)};
  normalize(r);
  return from_dyadic(r);
}

BSElem bs_inverse(const BSElem& g) { return BSElem::normal(g.q, checked::neg(g.m), g.p); }

CartanData cartan_t(const SL2Elem& g) {
  if (std::abs(g.det() - 1.0) > 1e-9)
    throw InvalidArgument("SL2 element has determinant " + std::to_string(g.det()));
  const double s = (g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d) / 2;
  if (s < 1 - 1e-9) throw InvalidArgument("Cartan s < 1: input is not unimodular");
  return CartanData{s, std::acosh(std::max(s, 1.0))};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_kind(const GroupElem& g, const GroupElem& h) {
  if (g.index() != h.index())
    throw InvalidArgument(std::string("group kind mismatch: ") +
                          std::string(kind_name(kind_of(g))) + " vs " +
                          std::string(kind_name(kind_of(h))));
}

}  // namespace

GroupElem mul(const GroupElem& g, const GroupElem& h) {
  require_same_kind(g, h);
  return std::visit(
      [&](const auto& x) -> GroupElem {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(h);
        if constexpr (std::is_same_v<T, EuclidElem>) return euclid_add(x, y);
        else if constexpr (std::is_same_v<T, HeisElem>) return heis_mul(x, y);
        else if constexpr (std::is_same_v<T, SL2Elem>) return sl2_mul(x, y);
        else if constexpr (std::is_same_v<T, AffElem>) return aff_mul(x, y);
        else return bs_mul(x, y);
      },
      g);
}

GroupElem inverse(const GroupElem& g) {
  return std::visit(Overloaded{
                        [](const EuclidElem& x) -> GroupElem { return euclid_neg(x); },
                        [](const HeisElem& x) -> GroupElem { return heis_inverse(x); },
                        [](const SL2Elem& x) -> GroupElem { return sl2_inverse(x); },
                        [](const AffElem& x) -> GroupElem { return aff_inverse(x); },
                        [](const BSElem& x) -> GroupElem { return bs_inverse(x); },
                    },
                    g);
}

GroupElem identity_like(const GroupElem& g) {
  return std::visit(Overloaded{
                        [](const EuclidElem& x) -> GroupElem {
                          return EuclidElem::zero(x.dim, x.coords[0].d());
                        },
                        [](const HeisElem& x) -> GroupElem { return HeisElem::identity(x.x.d()); },
                        [](const SL2Elem&) -> GroupElem { return SL2Elem{}; },
                        [](const AffElem&) -> GroupElem { return AffElem{}; },
                        [](const BSElem&) -> GroupElem { return BSElem{}; },
                    },
                    g);
}

bool is_identity(const GroupElem& g) { return g == identity_like(g); }

std::string to_string(const GroupElem& g) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const EuclidElem& x) {
                   os << '(';
                   for (std::size_t i = 0; i < x.dim; ++i) os << (i ? ", " : "") << x.coords[i];
                   os << ')';
                 },
                 [&](const HeisElem& x) { os << "heis(" << x.x << ", " << x.y << ", " << x.z << ')'; },
                 [&](const SL2Elem& x) {
                   os << "[[" << x.a << ", " << x.b << "], [" << x.c << ", " << x.d << "]]";
                 },
                 [&](const AffElem& x) { os << "aff(" << x.b << ", " << x.a << ')'; },
                 [&](const BSElem& x) {
                   os << "b^-" << x.p << " a^" << x.m << " b^" << x.q;
                 },
             },
             g);
  return os.str();
}

std::size_t hash_value(const GroupElem& g) noexcept {
  std::size_t h = g.index();
  auto mix = [&h](std::size_t v) { h = hash_combine(h, v); };
  auto mixd = [&](double v) { mix(std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(v + 0.0))); };
  std::visit(Overloaded{
                 [&](const EuclidElem& x) {
                   for (std::size_t i = 0; i < x.dim; ++i) mix(std::hash<QuadInt>{}(x.coords[i]));
                 },
                 [&](const HeisElem& x) {
                   mix(std::hash<QuadInt>{}(x.x));
                   mix(std::hash<QuadInt>{}(x.y));
                   mix(std::hash<QuadInt>{}(x.z));
                 },
                 [&](const SL2Elem& x) {
                   mixd(x.a);
                   mixd(x.b);
                   mixd(x.c);
                   mixd(x.d);
                 },
                 [&](const AffElem& x) {
                   mixd(x.b);
                   mixd(x.a);
                 },
                 [&](const BSElem& x) {
                   mix(std::hash<std::int64_t>{}(x.p));
                   mix(std::hash<std::int64_t>{}(x.m));
                   mix(std::hash<std::int64_t>{}(x.q));
                 },
             },
             g);
  return h;
}

}  // namespace alat
