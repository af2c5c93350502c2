#include "phiorbit/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace phiorbit {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

namespace {

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

PrimeStream::PrimeStream(u64 after, u64 bound, std::size_t segment_bytes)
    : bound_(bound), segment_low_(after + 1), segment_size_(std::max<std::size_t>(segment_bytes, 64)) {
  if (segment_low_ < 2) segment_low_ = 2;
  if (bound_ >= (u64{1} << 62)) throw InvalidArgument("PrimeStream bound must be below 2^62");
  u64 root = isqrt_u64(bound_);
  base_primes_ = primes_up_to(static_cast<std::uint32_t>(root));
  if (segment_low_ > bound_) exhausted_ = true;
}

void PrimeStream::fill_segment() {
  found_.clear();
  cursor_ = 0;
  while (found_.empty() && !exhausted_) {
    u64 low = segment_low_;
    u64 high = std::min<u64>(bound_, low + segment_size_ - 1);
    std::vector<char> sieve(high - low + 1, 1);
    for (u64 p : base_primes_) {
      u64 pp = p * p;
      if (pp > high) break;
      u64 start = std::max(pp, (low + p - 1) / p * p);
      for (u64 m = start; m <= high; m += p) sieve[m - low] = 0;
    }
    for (u64 i = 0; i < sieve.size(); ++i) {
      if (sieve[i] && low + i >= 2) found_.push_back(low + i);
    }
    if (high >= bound_) {
      exhausted_ = true;
    } else {
      segment_low_ = high + 1;
    }
  }
}

u64 PrimeStream::next() {
  if (cursor_ >= found_.size()) {
    fill_segment();
    if (found_.empty()) return 0;
  }
  return found_[cursor_++];
}

}  // namespace phiorbit
