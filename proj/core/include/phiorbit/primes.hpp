#pragma once

#include <cstdint>
#include <vector>

#include "phiorbit/checked.hpp"

namespace phiorbit {

// Deterministic Miller-Rabin for the whole 64-bit range (bases are the
// first twelve primes, sufficient below 3.3e24).
bool is_prime_u64(u64 n);

// Plain sieve of Eratosthenes; returns every prime <= limit in order.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Enumerates primes in increasing order starting just above `after`, one
// segment at a time. Stops (next() returns 0) once the next prime would
// exceed `bound`. Sieving primes up to sqrt(bound) are computed on
// construction.
class PrimeStream {
 public:
  PrimeStream(u64 after, u64 bound, std::size_t segment_bytes = 1u << 18);

  // Returns the next prime, or 0 when the bound is reached.
  u64 next();

  u64 bound() const { return bound_; }

 private:
  void fill_segment();

  u64 bound_;
  u64 segment_low_;
  std::size_t segment_size_;
  std::vector<std::uint32_t> base_primes_;
  std::vector<u64> found_;
  std::size_t cursor_ = 0;
  bool exhausted_ = false;
};

}  // namespace phiorbit
