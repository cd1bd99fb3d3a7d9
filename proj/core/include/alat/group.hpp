#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include "alat/quad_int.hpp"

namespace alat {

/// Vector group R^n (n <= 3) with exact Z[sqrt(d)] coordinates. Addition is
/// the group law.
struct EuclidElem {
  std::array<QuadInt, 3> coords{};
  std::uint8_t dim = 1;

  static EuclidElem zero(std::uint8_t dim, std::int64_t d);
  static EuclidElem line(const QuadInt& x);
  static EuclidElem integer(std::int64_t x, std::int64_t d = 2);
  static EuclidElem plane(const QuadInt& x, const QuadInt& y);

  const QuadInt& operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const EuclidElem& l, const EuclidElem& r) {
    if (l.dim != r.dim) return false;
    for (std::size_t i = 0; i < l.dim; ++i)
      if (l.coords[i] != r.coords[i]) return false;
    return true;
  }
  friend std::strong_ordering operator<=>(const EuclidElem& l, const EuclidElem& r) {
    if (auto c = l.dim <=> r.dim; c != 0) return c;
    for (std::size_t i = 0; i < l.dim; ++i)
      if (auto c = l.coords[i] <=> r.coords[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

/// Heisenberg group with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y').
struct HeisElem {
  QuadInt x, y, z;

  static HeisElem identity(std::int64_t d);
  friend auto operator<=>(const HeisElem&, const HeisElem&) = default;
  friend bool operator==(const HeisElem&, const HeisElem&) = default;
};

/// SL2(R) element [[a, b], [c, d]].
struct SL2Elem {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const noexcept { return a * d - b * c; }
  static SL2Elem diag(double t);  ///< a(t) = diag(e^{t/2}, e^{-t/2})
  static SL2Elem rotation(double theta);
  friend auto operator<=>(const SL2Elem&, const SL2Elem&) = default;
  friend bool operator==(const SL2Elem&, const SL2Elem&) = default;
};

/// ax+b group R x| R with (b,a)(b',a') = (b + e^a b', a + a').
struct AffElem {
  double b = 0;
  double a = 0;
  friend auto operator<=>(const AffElem&, const AffElem&) = default;
  friend bool operator==(const AffElem&, const AffElem&) = default;
};

/// BS(1,2) = <a, b | b a b^-1 = a^2> in the reduced normal form b^-p a^m b^q:
/// p, q >= 0 and m odd whenever p > 0 and q > 0.
struct BSElem {
  std::int64_t p = 0;
  std::int64_t m = 0;
  std::int64_t q = 0;

  /// Validates reducedness; throws InvalidArgument otherwise.
  static BSElem normal(std::int64_t p, std::int64_t m, std::int64_t q);
  static BSElem gen_a(std::int64_t power = 1) { return BSElem{0, power, 0}; }
  static BSElem gen_b() { return BSElem{0, 0, 1}; }
  static BSElem gen_b_inv() { return BSElem{1, 0, 0}; }
  /// Reduce an arbitrary triple (p, m, q >= 0) to normal form.
  static BSElem reduce(std::int64_t p, std::int64_t m, std::int64_t q);
  /// Evaluate a word over {a, A, b, B} (capitals are inverses).
  static BSElem from_word(std::string_view word);

  /// Minimal number of factors from <a> u {b, b^-1} needed to write this
  /// element: p + q + [m != 0].
  std::int64_t syllable_length() const noexcept { return p + q + (m != 0 ? 1 : 0); }

  friend auto operator<=>(const BSElem&, const BSElem&) = default;
  friend bool operator==(const BSElem&, const BSElem&) = default;
};

using GroupElem = std::variant<EuclidElem, HeisElem, SL2Elem, AffElem, BSElem>;

enum class GroupKind { Euclid, Heis, SL2, Aff, BS };

GroupKind kind_of(const GroupElem& g) noexcept;
std::string_view kind_name(GroupKind k) noexcept;

EuclidElem euclid_add(const EuclidElem& g, const EuclidElem& h);
EuclidElem euclid_neg(const EuclidElem& g);

HeisElem heis_mul(const HeisElem& g, const HeisElem& h);
HeisElem heis_inverse(const HeisElem& g);

SL2Elem sl2_mul(const SL2Elem& g, const SL2Elem& h);
SL2Elem sl2_inverse(const SL2Elem& g);

/// Throws OverflowError when e^a is not finite.
AffElem aff_mul(const AffElem& g, const AffElem& h);
AffElem aff_inverse(const AffElem& g);
/// Modular function Delta(b, a) = e^{-a}.
double aff_modular(const AffElem& g);

BSElem bs_mul(const BSElem& g, const BSElem& h);
BSElem bs_inverse(const BSElem& g);

struct CartanData {
  double s;  ///< cosh(t) = (a^2+b^2+c^2+d^2)/2
  double t;  ///< Cartan projection, >= 0
};

/// Throws InvalidArgument if det deviates from 1 by more than 1e-9 or s < 1 - 1e-9.
CartanData cartan_t(const SL2Elem& g);

/// Generic law on the variant; kinds must agree (InvalidArgument otherwise).
GroupElem mul(const GroupElem& g, const GroupElem& h);
GroupElem inverse(const GroupElem& g);
GroupElem identity_like(const GroupElem& g);
bool is_identity(const GroupElem& g);

std::string to_string(const GroupElem& g);

std::size_t hash_value(const GroupElem& g) noexcept;

}  // namespace alat

template <>
struct std::hash<alat::GroupElem> {
  std::size_t operator()(const alat::GroupElem& g) const noexcept { return alat::hash_value(g); }
};
