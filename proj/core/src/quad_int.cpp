#include "alat/quad_int.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "alat/checked.hpp"
#include "alat/error.hpp"

namespace alat {

bool is_squarefree(std::int64_t d) noexcept {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadInt::QuadInt(std::int64_t a, std::int64_t b, std::int64_t d) : a_(a), b_(b), d_(d) {
  if (!is_squarefree(d)) {
    throw InvalidArgument("ring parameter d=" + std::to_string(d) + " must be squarefree and >= 2");
  }
}

QuadInt QuadInt::conjugate() const {
  QuadInt r = *this;
  r.b_ = checked::neg(b_);
  return r;
}

std::int64_t QuadInt::norm() const {
  return checked::sub(checked::mul(a_, a_), checked::mul(d_, checked::mul(b_, b_)));
}

long double QuadInt::embedding_ld() const noexcept {
  return static_cast<long double>(a_) +
         static_cast<long double>(b_) * std::sqrt(static_cast<long double>(d_));
}

long double QuadInt::conj_embedding_ld() const noexcept {
  return static_cast<long double>(a_) -
         static_cast<long double>(b_) * std::sqrt(static_cast<long double>(d_));
}

double QuadInt::embedding() const noexcept { return static_cast<double>(embedding_ld()); }
double QuadInt::conj_embedding() const noexcept { return static_cast<double>(conj_embedding_ld()); }

QuadInt QuadInt::operator-() const {
  QuadInt r = *this;
  r.a_ = checked::neg(a_);
  r.b_ = checked::neg(b_);
  return r;
}

static void require_same_ring(const QuadInt& x, const QuadInt& y) {
  if (x.d() != y.d()) {
    throw RingMismatch("ring mismatch: sqrt(" + std::to_string(x.d()) + ") vs sqrt(" +
                       std::to_string(y.d()) + ")");
  }
}

QuadInt& QuadInt::operator+=(const QuadInt& o) {
  require_same_ring(*this, o);
  a_ = checked::add(a_, o.a_);
  b_ = checked::add(b_, o.b_);
  return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o) {
  require_same_ring(*this, o);
  a_ = checked::sub(a_, o.a_);
  b_ = checked::sub(b_, o.b_);
  return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& o) {
  require_same_ring(*this, o);
  // (a + b s)(a' + b' s) = (aa' + d bb') + (ab' + ba') s
  const std::int64_t na =
      checked::add(checked::mul(a_, o.a_), checked::mul(d_, checked::mul(b_, o.b_)));
  const std::int64_t nb = checked::add(checked::mul(a_, o.b_), checked::mul(b_, o.a_));
  a_ = na;
  b_ = nb;
  return *this;
}

std::string QuadInt::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
  os << x.a();
  if (x.b() >= 0) os << '+';
  return os << x.b() << "*sqrt(" << x.d() << ')';
}

GaloisData galois_data(const QuadInt& x) {
  return GaloisData{x.conjugate(), x.norm(), x.embedding(), x.conj_embedding()};
}

int sign_of(std::int64_t a, std::int64_t b, std::int64_t d) noexcept {
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with d b^2. Irrational sqrt(d) rules out ties.
  const int128 lhs = static_cast<int128>(a) * a;
  const int128 rhs = static_cast<int128>(b) * b * d;
  return lhs > rhs ? sa : sb;
}

int compare_with_integer(const QuadInt& x, std::int64_t c, bool conjugate) noexcept {
  const int128 shifted = static_cast<int128>(x.a()) - c;
  const std::int64_t b = conjugate ? -x.b() : x.b();
  if (shifted > INT64_MAX || shifted < INT64_MIN) {
    // |a - c| dwarfs any b*sqrt(d) we can represent only if b is small; fall
    // back to long double, which is exact in sign at this magnitude gap.
    const long double v = static_cast<long double>(shifted) +
                          static_cast<long double>(b) * std::sqrt(static_cast<long double>(x.d()));
    return (v > 0) - (v < 0);
  }
  return sign_of(static_cast<std::int64_t>(shifted), b, x.d());
}

}  // namespace alat
