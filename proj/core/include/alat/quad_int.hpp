#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace alat {

/// Exact element a + b*sqrt(d) of the real quadratic ring Z[sqrt(d)].
///
/// The ring parameter travels with every value so mixed-ring arithmetic is
/// caught at the operation instead of producing a silently wrong element.
/// Arithmetic is exact; overflow of the int64 components throws OverflowError.
class QuadInt {
 public:
  /// Zero of Z[sqrt(2)].
  constexpr QuadInt() = default;
  /// Throws InvalidArgument unless d is squarefree and >= 2.
  QuadInt(std::int64_t a, std::int64_t b, std::int64_t d);

  static QuadInt rational(std::int64_t a, std::int64_t d) { return QuadInt(a, 0, d); }

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t d() const noexcept { return d_; }

  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
  bool is_rational() const noexcept { return b_ == 0; }

  /// Galois conjugate a - b*sqrt(d).
  QuadInt conjugate() const;
  /// a^2 - d*b^2.
  std::int64_t norm() const;
  /// a + b*sqrt(d) as a real number.
  double embedding() const noexcept;
  /// a - b*sqrt(d) as a real number.
  double conj_embedding() const noexcept;
  long double embedding_ld() const noexcept;
  long double conj_embedding_ld() const noexcept;

  QuadInt operator-() const;
  QuadInt& operator+=(const QuadInt& o);
  QuadInt& operator-=(const QuadInt& o);
  QuadInt& operator*=(const QuadInt& o);
  friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
  friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
  friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }

  /// Lexicographic on (d, a, b); exact structural order, not the real order.
  friend auto operator<=>(const QuadInt&, const QuadInt&) = default;
  friend bool operator==(const QuadInt&, const QuadInt&) = default;

  std::string to_string() const;

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t d_ = 2;
};

std::ostream& operator<<(std::ostream& os, const QuadInt& x);

/// Result bundle of galois_data().
struct GaloisData {
  QuadInt conjugate;
  std::int64_t norm;
  double embedding;
  double conj_embedding;
};

GaloisData galois_data(const QuadInt& x);

bool is_squarefree(std::int64_t d) noexcept;

/// Exact sign of a + b*sqrt(d) (d > 0, not a perfect square).
int sign_of(std::int64_t a, std::int64_t b, std::int64_t d) noexcept;

/// Exact comparison of a real embedding against an integer: sign(x - c), where
/// x is the embedding (conjugate=false) or the conjugate embedding.
int compare_with_integer(const QuadInt& x, std::int64_t c, bool conjugate) noexcept;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace alat

template <>
struct std::hash<alat::QuadInt> {
  std::size_t operator()(const alat::QuadInt& x) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(x.a());
    h = alat::hash_combine(h, std::hash<std::int64_t>{}(x.b()));
    return alat::hash_combine(h, std::hash<std::int64_t>{}(x.d()));
  }
};
