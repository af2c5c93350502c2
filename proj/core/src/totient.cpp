#include "phiorbit/totient.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <new>
#include <numbers>
#include <numeric>
#include <string>

#include "phiorbit/primes.hpp"

namespace phiorbit {

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(1u << 16);
  return table;
}

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Montgomery arithmetic modulo an odd n, R = 2^64. Values stay in [0, n).
class Montgomery {
 public:
  explicit Montgomery(u64 n) : n_(n), inv_(n) {
    for (int i = 0; i < 5; ++i) inv_ *= 2 - n * inv_;  // n * inv_ == 1 mod 2^64
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

 private:
  u64 reduce(u128 t) const {
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 m = static_cast<u64>(t) * inv_;
    const u64 mn = static_cast<u64>((static_cast<u128>(m) * n_) >> 64);
    return hi >= mn ? hi - mn : hi - mn + n_;
  }
  u64 n_;
  u64 inv_;
};

// Pollard-Brent; n must be an odd composite with no factor below 2^16.
// The walk runs in Montgomery form, which leaves every gcd unchanged.
u64 rho_split(u64 n, u64& rng) {
  const Montgomery mont(n);
  for (;;) {
    const u64 c = splitmix64(rng) % (n - 1) + 1;
    u64 y = splitmix64(rng) % n;
    const u64 m = 128;
    u64 g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    auto f = [&](u64 v) {
      const u64 s = mont.mul(v, v);
      return s >= n - c ? s - (n - c) : s + c;
    };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mont.mul(q, x > y ? x - y : y - x);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, u64& rng, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho_split(n, rng);
  split_into(d, rng, out);
  split_into(n / d, rng, out);
}

}  // namespace

FactoredInteger factor(u64 n, u64 rho_seed) {
  if (n == 0) throw InvalidArgument("factor: n must be positive");
  FactoredInteger result{n, {}};
  u64 rest = n;
  for (u64 p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest > 1) {
    std::vector<u64> big;
    u64 rng = rho_seed;
    split_into(rest, rng, big);
    std::sort(big.begin(), big.end());
    for (u64 p : big) {
      if (!result.factors.empty() && result.factors.back().prime == p) {
        ++result.factors.back().exponent;
      } else {
        result.factors.push_back({p, 1});
      }
    }
  }
  return result;
}

u64 phi(const FactoredInteger& f) {
  u64 r = f.value;
  for (const auto& pp : f.factors) r = r / pp.prime * (pp.prime - 1);
  return r;
}

u64 phi(u64 n) { return phi(factor(n)); }

u64 sieve_cap_from_env() {
  const char* env = std::getenv("PHIORBIT_SIEVE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultSieveCap;
  const std::string_view text(env);
  u64 v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || v == 0) {
    throw InvalidArgument("PHIORBIT_SIEVE_CAP must be a positive integer, got '" + std::string(text) + "'");
  }
  return v;
}

PhiSieve::PhiSieve(u64 limit, u64 cap) : limit_(limit) {
  if (limit == 0) throw InvalidArgument("phi_sieve: limit must be positive");
  if (limit > cap || limit >= (u64{1} << 32)) {
    throw ResourceExhausted("phi_sieve: limit " + std::to_string(limit) + " exceeds sieve cap " +
                            std::to_string(std::min<u64>(cap, (u64{1} << 32) - 1)));
  }
  try {
    phi_.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceExhausted("phi_sieve: cannot allocate " + std::to_string(limit + 1) + " entries");
  }
  phi_[1] = 1;
  for (u64 i = 2; i <= limit; ++i) {
    if (phi_[i] == 0) {
      phi_[i] = static_cast<std::uint32_t>(i - 1);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const u64 m = i * p;
      if (m > limit) break;
      if (i % p == 0) {
        phi_[m] = phi_[i] * p;
        break;
      }
      phi_[m] = phi_[i] * (p - 1);
    }
  }
}

bool PhiSieve::is_prime(u64 n) const {
  if (n <= limit_) return n >= 2 && phi_[n] == n - 1;
  return is_prime_u64(n);
}

std::vector<std::uint32_t> phi_sieve(u64 limit) {
  PhiSieve s(limit);
  auto v = s.values();
  return {v.begin(), v.end()};
}

AverageCheck avg_phi_check(u64 n, const PhiSieve& sieve) {
  if (n < 2) throw InvalidArgument("avg_phi_check: n must be at least 2");
  if (n > sieve.limit()) throw InvalidArgument("avg_phi_check: n beyond sieve limit");
  u128 sum = 0;
  for (u64 i = 1; i <= n; ++i) sum += sieve[i];
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, -1, sizeof(u128), 0, 0, &sum);
  AverageCheck out;
  out.mean = mpq_class(num, mpz_class(std::to_string(n)));
  out.mean.canonicalize();
  out.reference = 3.0 * static_cast<double>(n) / (std::numbers::pi * std::numbers::pi);
  out.abs_error = std::abs(out.mean.get_d() - out.reference);
  return out;
}

AverageCheck avg_phi_check(u64 n) {
  if (n < 2) throw InvalidArgument("avg_phi_check: n must be at least 2");
  return avg_phi_check(n, PhiSieve(n));
}

PhiChain phi_chain(u64 x1, const PhiSieve* sieve) {
  if (x1 == 0) throw InvalidArgument("phi_chain: x1 must be positive");
  PhiChain out;
  out.start = x1;
  out.chain.push_back(x1);
  for (u64 x = x1; x != 1;) {
    x = sieve ? sieve->phi(x) : phi(x);
    out.chain.push_back(x);
  }
  out.pillai_n = out.chain.size();
  return out;
}

PillaiBounds pillai_bounds(u64 x1) {
  if (x1 == 0) throw InvalidArgument("pillai_bounds: x1 must be positive");
  // largest m >= 0 with 2 * 3^m <= x1 (0 when none exists)
  u64 m3 = 0;
  for (u128 pw = 3; 2 * pw <= x1; pw *= 3) ++m3;
  // largest m with 2^m <= x1
  u64 m2 = 0;
  for (u128 pw = 2; pw <= x1; pw *= 2) ++m2;
  return {m3 + 1, m2 + 1};
}

std::vector<LehmerHit> lehmer_scan(u64 limit, const PhiSieve& sieve) {
  if (limit < 2) throw InvalidArgument("lehmer_scan: limit must be at least 2");
  if (limit > sieve.limit()) throw InvalidArgument("lehmer_scan: limit beyond sieve limit");
  std::vector<LehmerHit> hits;
  for (u64 q = 4; q <= limit; ++q) {
    const u64 f = sieve[q];
    if (f == q - 1) continue;  // prime
    if ((q - 1) % f == 0) hits.push_back({q, (q - 1) / f});
  }
  return hits;
}

std::vector<LehmerHit> lehmer_scan(u64 limit) {
  if (limit < 2) throw InvalidArgument("lehmer_scan: limit must be at least 2");
  return lehmer_scan(limit, PhiSieve(limit));
}

}  // namespace phiorbit
