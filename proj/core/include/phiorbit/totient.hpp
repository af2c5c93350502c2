#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <span>
#include <vector>

#include "phiorbit/checked.hpp"

namespace phiorbit {

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its factorization; primes strictly
// increasing, exponents >= 1, factor list empty for 1.
struct FactoredInteger {
  u64 value = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

inline constexpr u64 kDefaultRhoSeed = 0x5eed'0f'5eed'0f'5eedULL;

// Trial division by primes below 2^16, then Miller-Rabin plus Pollard-Brent
// rho for the cofactor. The rho starting points derive from `rho_seed`, so
// the call is reproducible. Throws InvalidArgument for n = 0.
FactoredInteger factor(u64 n, u64 rho_seed = kDefaultRhoSeed);

// Euler's totient from the factorization. Throws InvalidArgument for n = 0.
u64 phi(u64 n);
u64 phi(const FactoredInteger& f);

// Number of phi entries a sieve may hold unless overridden; 2^27 entries is
// 512 MiB of uint32_t. PHIORBIT_SIEVE_CAP in the environment replaces it.
inline constexpr u64 kDefaultSieveCap = u64{1} << 27;
u64 sieve_cap_from_env();

// Totients of 1..limit from a linear sieve, plus the primes it found.
// Immutable after construction and safe to share between threads.
class PhiSieve {
 public:
  // Throws InvalidArgument for limit = 0 and ResourceExhausted when limit
  // exceeds `cap` or the allocation fails.
  explicit PhiSieve(u64 limit, u64 cap = sieve_cap_from_env());

  u64 limit() const { return limit_; }

  // Raw table entry; n must be in [1, limit].
  std::uint32_t operator[](u64 n) const { return phi_[n]; }

  // phi(n) for any n >= 1: table lookup when in range, factorization above.
  u64 phi(u64 n) const { return n <= limit_ ? phi_[n] : phiorbit::phi(n); }

  bool is_prime(u64 n) const;

  // phi(1..limit), index 0 of the result is phi(1).
  std::span<const std::uint32_t> values() const { return {phi_.data() + 1, limit_}; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  u64 limit_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> primes_;
};

// phi(1..limit) as a plain array (entry i-1 holds phi(i)).
std::vector<std::uint32_t> phi_sieve(u64 limit);

struct AverageCheck {
  mpq_class mean;       // (1/n) * sum_{i<=n} phi(i), exact
  double reference = 0;  // 3n / pi^2
  double abs_error = 0;  // |mean - reference|
};

// Requires n >= 2 and n <= sieve.limit().
AverageCheck avg_phi_check(u64 n, const PhiSieve& sieve);
AverageCheck avg_phi_check(u64 n);

// Pure iteration x, phi(x), phi(phi(x)), ... down to 1. pillai_n is the
// 1-based index of the first 1 (so pillai_n == chain.size()).
struct PhiChain {
  u64 start = 1;
  std::vector<u64> chain;
  u64 pillai_n = 1;
};

PhiChain phi_chain(u64 x1, const PhiSieve* sieve = nullptr);

// floor((log x1 - log 2)/log 3) + 1 and floor(log2 x1) + 1, both floors by
// exact integer power comparison. The first floor is clamped at 0 (x1 = 1).
struct PillaiBounds {
  u64 lower = 1;
  u64 upper = 1;

  friend bool operator==(const PillaiBounds&, const PillaiBounds&) = default;
};

PillaiBounds pillai_bounds(u64 x1);

struct LehmerHit {
  u64 q = 0;
  u64 ratio = 0;  // (q - 1) / phi(q)
};

// Every composite q <= limit with phi(q) | q - 1. Requires limit >= 2 and
// limit <= sieve.limit().
std::vector<LehmerHit> lehmer_scan(u64 limit, const PhiSieve& sieve);
std::vector<LehmerHit> lehmer_scan(u64 limit);

}  // namespace phiorbit
