#pragma once

#include <cstdint>

#include "alat/error.hpp"

namespace alat {

__extension__ using int128 = __int128;

}  // namespace alat

namespace alat::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

/// a * 2^s for s >= 0.
inline std::int64_t shl(std::int64_t a, std::int64_t s) {
  if (s < 0) throw InvalidArgument("negative shift");
  if (a == 0) return 0;
  if (s >= 63) throw OverflowError("int64 overflow in power-of-two scaling");
  return mul(a, std::int64_t{1} << s);
}

}  // namespace alat::checked
