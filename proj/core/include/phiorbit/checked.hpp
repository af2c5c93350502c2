#pragma once

#include <cstdint>
#include <string_view>

#include "phiorbit/errors.hpp"

namespace phiorbit {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline u64 checked_add(u64 a, u64 b, std::string_view what = "addition") {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError(std::string(what) + " overflows 64 bits");
  }
  return r;
}

inline u64 checked_mul(u64 a, u64 b, std::string_view what = "multiplication") {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError(std::string(what) + " overflows 64 bits");
  }
  return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace phiorbit
