#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phiorbit/errors.hpp"
#include "phiorbit/primes.hpp"
#include "phiorbit/totient.hpp"

using namespace phiorbit;

namespace {

const PhiSieve& sieve_1e6() {
  static const PhiSieve s(1'000'000, u64{1} << 27);
  return s;
}

}  // namespace

TEST(Factor, SmallValues) {
  const FactoredInteger f = factor(360);
  EXPECT_EQ(f.value, 360u);
  const std::vector<PrimePower> expected{{2, 3}, {3, 2}, {5, 1}};
  EXPECT_EQ(f.factors, expected);
  EXPECT_TRUE(factor(1).factors.empty());
  EXPECT_THROW(factor(0), InvalidArgument);
}

TEST(Factor, LargeSemiprimesAndPowers) {
  const u64 p = 4294967291ULL;  // largest prime below 2^32
  const u64 q = 4294967279ULL;
  const FactoredInteger f = factor(p * q);
  const std::vector<PrimePower> expected{{q, 1}, {p, 1}};
  EXPECT_EQ(f.factors, expected);

  const FactoredInteger g = factor(u64{1} << 63);
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0], (PrimePower{2, 63}));

  const u64 big_prime = 18446744073709551557ULL;  // largest 64-bit prime
  EXPECT_TRUE(is_prime_u64(big_prime));
  EXPECT_EQ(phi(big_prime), big_prime - 1);
}

TEST(Factor, SeedDoesNotChangeResult) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const u64 n = (rng() >> 4) | 1;
    EXPECT_EQ(factor(n, 1).factors, factor(n, 99).factors) << n;
  }
}

TEST(Factor, ProductReconstructsRandomInputs) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const u64 n = rng() | 1;
    const FactoredInteger f = factor(n);
    unsigned __int128 prod = 1;
    for (const auto& pp : f.factors) {
      EXPECT_TRUE(is_prime_u64(pp.prime)) << pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    EXPECT_EQ(static_cast<u64>(prod), n);
  }
}

TEST(Phi, OracleValues) {
  EXPECT_EQ(phi(1), 1u);
  EXPECT_EQ(phi(7), 6u);
  EXPECT_EQ(phi(12), 4u);
  EXPECT_THROW(phi(0), InvalidArgument);
  const std::vector<std::uint32_t> first_ten{1, 1, 2, 2, 4, 2, 6, 4, 6, 4};
  const auto table = phi_sieve(10);
  EXPECT_EQ(table, first_ten);
}

TEST(Primality, OracleValues) {
  EXPECT_TRUE(is_prime_u64(999983));
  EXPECT_FALSE(is_prime_u64(999981));
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  EXPECT_EQ(primes_up_to(30), (std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(PrimeStream, MatchesSimpleSieve) {
  const auto ref = primes_up_to(2'000'000);
  PrimeStream s(0, 2'000'000, 4096);
  std::size_t i = 0;
  for (u64 p = s.next(); p != 0; p = s.next(), ++i) {
    ASSERT_LT(i, ref.size());
    ASSERT_EQ(p, ref[i]);
  }
  EXPECT_EQ(i, ref.size());

  PrimeStream t(1'000'000'000'000ULL, 1'000'000'000'100ULL);
  std::vector<u64> got;
  for (u64 p = t.next(); p != 0; p = t.next()) got.push_back(p);
  for (u64 p : got) EXPECT_TRUE(is_prime_u64(p));
  u64 count = 0;
  for (u64 n = 1'000'000'000'001ULL; n <= 1'000'000'000'100ULL; ++n) count += is_prime_u64(n);
  EXPECT_EQ(got.size(), count);
}

TEST(PhiSieve, AgreesWithFactorization) {
  const PhiSieve& s = sieve_1e6();
  for (u64 n = 1; n <= 100'000; ++n) ASSERT_EQ(s[n], phi(n)) << n;
  EXPECT_EQ(s.phi(2'000'003), phi(2'000'003));
}

TEST(PhiSieve, Limits) {
  EXPECT_THROW(PhiSieve(0), InvalidArgument);
  EXPECT_THROW(PhiSieve(1000, 999), ResourceExhausted);
}

TEST(PhiProperty, UpperBoundEqualityIffPrime) {
  const PhiSieve& s = sieve_1e6();
  for (u64 n = 2; n <= 1'000'000; ++n) {
    ASSERT_LE(s[n], n - 1);
    ASSERT_EQ(s[n] == n - 1, s.is_prime(n)) << n;
  }
}

TEST(PhiProperty, CompositeDrop) {
  const PhiSieve& s = sieve_1e6();
  for (u64 n = 4; n <= 1'000'000; ++n) {
    if (s.is_prime(n)) continue;
    const u64 gap = n - s[n];
    ASSERT_GE(gap * gap, n) << n;
  }
}

TEST(PhiProperty, EvenFromThree) {
  const PhiSieve& s = sieve_1e6();
  for (u64 n = 3; n <= 1'000'000; ++n) ASSERT_EQ(s[n] % 2, 0u) << n;
}

TEST(PhiProperty, Multiplicative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const u64 a = rng() % 100000 + 1;
    const u64 b = rng() % 100000 + 1;
    if (std::gcd(a, b) != 1) continue;
    EXPECT_EQ(phi(a * b), phi(a) * phi(b));
  }
}

TEST(AveragePhi, SmallExample) {
  const AverageCheck c = avg_phi_check(10);
  EXPECT_EQ(c.mean, mpq_class(16, 5));
  EXPECT_NEAR(c.reference, 30.0 / (M_PI * M_PI), 1e-12);
  EXPECT_THROW(avg_phi_check(1), InvalidArgument);
}

TEST(PhiChain, OracleExample) {
  const PhiChain c = phi_chain(100);
  EXPECT_EQ(c.chain, (std::vector<u64>{100, 40, 16, 8, 4, 2, 1}));
  EXPECT_EQ(c.pillai_n, 7u);
  EXPECT_EQ(phi_chain(1).pillai_n, 1u);
}

TEST(Pillai, BoundsFromIntegerPowers) {
  EXPECT_EQ(pillai_bounds(100), (PillaiBounds{4, 7}));
  EXPECT_EQ(pillai_bounds(1), (PillaiBounds{1, 1}));
  EXPECT_EQ(pillai_bounds(2), (PillaiBounds{1, 2}));
  EXPECT_EQ(pillai_bounds(6), (PillaiBounds{2, 3}));
  EXPECT_EQ(pillai_bounds(5), (PillaiBounds{1, 3}));
  EXPECT_EQ(pillai_bounds(1024), (PillaiBounds{6, 11}));
  EXPECT_EQ(pillai_bounds(1023), (PillaiBounds{6, 10}));
}

// The lower bound always holds. The upper bound holds for even x1, while odd
// x1 can need one step more (3, 2, 1 has N = 3 against floor(log2 3) + 1 = 2);
// counted in iterations, N - 1, it holds everywhere.
TEST(Pillai, BoundsAgainstChains) {
  const PhiSieve& s = sieve_1e6();
  u64 odd_excess = 0;
  for (u64 x = 1; x <= 100'000; ++x) {
    const u64 n = phi_chain(x, &s).pillai_n;
    const PillaiBounds b = pillai_bounds(x);
    ASSERT_LE(b.lower, n) << x;
    ASSERT_LE(n - 1, b.upper) << x;
    if (x % 2 == 0) ASSERT_LE(n, b.upper) << x;
    odd_excess += n > b.upper;
  }
  EXPECT_GT(odd_excess, 0u);
  EXPECT_EQ(phi_chain(3).pillai_n, pillai_bounds(3).upper + 1);
}

TEST(Lehmer, NoHitsBelow100) {
  EXPECT_TRUE(lehmer_scan(100).empty());
  EXPECT_THROW(lehmer_scan(1), InvalidArgument);
}

TEST(SieveCap, EnvironmentOverride) {
  ::setenv("PHIORBIT_SIEVE_CAP", "12345", 1);
  EXPECT_EQ(sieve_cap_from_env(), 12345u);
  ::setenv("PHIORBIT_SIEVE_CAP", "junk", 1);
  EXPECT_THROW(sieve_cap_from_env(), InvalidArgument);
  ::setenv("PHIORBIT_SIEVE_CAP", "12x", 1);
  EXPECT_THROW(sieve_cap_from_env(), InvalidArgument);
  ::unsetenv("PHIORBIT_SIEVE_CAP");
  EXPECT_EQ(sieve_cap_from_env(), kDefaultSieveCap);
}
