#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phiorbit/checked.hpp"

namespace phiorbit {

// Euler-Mascheroni constant, 50 significant digits.
inline constexpr std::string_view kEulerGamma50 = "0.57721566490153286060651209008240243104215933593992";

// Product of the values in a balanced binary tree (fast for many small
// factors). Empty input gives 1.
mpz_class product_tree(std::span<const u64> values);

// prod_{p <= x} (1 - 1/p) next to e^{-gamma}/log x * (1 - 1/log^2 x) and
// e^{-gamma}/log x * (1 + 1/(2 log^2 x)). The bounds are evaluated with
// 256-bit MPFR; `error_bound` is an absolute bound on their evaluation
// error and both margins must exceed ten times it for ok().
struct MertensEnvelope {
  u64 x = 2;
  mpq_class product;  // canonical
  double rs_lower = 0;
  double rs_upper = 0;
  double lower_margin = 0;  // product - rs_lower
  double upper_margin = 0;  // rs_upper - product
  double error_bound = 0;
  bool lower_ok = false;
  bool upper_ok = false;

  bool ok() const { return lower_ok && upper_ok; }
};

// Requires x >= 2.
MertensEnvelope mertens_product(u64 x);

// Evaluates the envelope for an increasing list of x, extending one running
// product instead of recomputing it.
class MertensSweep {
 public:
  MertensSweep();
  // x must not decrease between calls and must be >= 2.
  MertensEnvelope at(u64 x);

 private:
  u64 reached_ = 1;
  mpz_class num_ = 1;  // prod (p - 1)
  mpz_class den_ = 1;  // prod p
};

struct CorollaryCheck {
  u64 x = 6;
  u64 prime_count = 0;  // primes in (x, x^3]
  mpq_class product;    // canonical
  bool ok = false;      // product < 1/2
};

// prod_{x < p <= x^3} (1 - 1/p) < 1/2, decided exactly. Requires x >= 6 and
// x^3 <= max_prime.
CorollaryCheck check_corollary(u64 x, u64 max_prime = u64{1} << 32);

struct ChebyshevCheck {
  u64 x = 1;
  double primorial_log2 = 0;  // sum_{p <= x} log2 p in double
  double margin = 0;          // 2x - primorial_log2
  double error_bound = 0;     // bound on the rounding error of the sum
  bool exact_ok = false;      // prod_{p <= x} p < 4^x with big integers
  bool ok = false;            // exact_ok and margin > error_bound
};

ChebyshevCheck chebyshev_check(u64 x);

inline constexpr u64 kDefaultMaxPrime = 1'000'000'000;

// Blocks of consecutive primes above X with
//   prod_{block j} (1 - 1/p) < 1/2 < prod_{block j minus its last prime} (1 - 1/p)
// and the least y > X with y = j (mod q_j), q_j the product of block j.
// r holds 1-based indices into `primes`: block j is primes[r_j - 1 .. r_{j+1} - 2].
struct CrtWitness {
  u64 X = 6;
  u64 k = 0;
  std::vector<u64> primes;
  std::vector<u64> r;
  std::vector<mpz_class> q;
  mpz_class y;

  std::span<const u64> block(std::size_t j) const;
  friend bool operator==(const CrtWitness&, const CrtWitness&) = default;
};

// Requires X >= 6 and k even. Throws ResourceExhausted when a block would
// need a prime above max_prime.
CrtWitness build_crt_witness(u64 X, u64 k, u64 max_prime = kDefaultMaxPrime);

// Re-derives everything about a witness by routes independent of the
// builder: a plain sieve for the prime list, GMP primorials for q_j, an
// MPFR product with a rigorous rounding bound for both block inequalities,
// and direct modular reduction for the congruences.
struct WitnessVerification {
  bool primes_ok = false;       // consecutive primes, first one above X
  bool q_ok = false;            // q_j matches the primorial ratio
  bool blocks_ok = false;       // both block inequalities, every j
  bool coprime_ok = false;      // gcd(q_i, q_j) = 1
  bool congruences_ok = false;  // y mod q_j = j
  bool y_bound_ok = false;      // y >= q_0 > X
  bool r_bound_ok = false;      // r_j <= X^(3^j)
  std::string detail;

  bool ok() const {
    return primes_ok && q_ok && blocks_ok && coprime_ok && congruences_ok && y_bound_ok && r_bound_ok;
  }
};

WitnessVerification verify_crt_witness(const CrtWitness& w);

enum class DropStatus { verified, violated, unverified };
std::string_view to_string(DropStatus s);
DropStatus parse_drop_status(std::string_view s);

struct PhiDropDetail {
  u64 j = 0;
  bool exact = false;  // full factorization of 2y - 2j was obtained
  DropStatus status = DropStatus::unverified;
};

struct PhiDropOutcome {
  DropStatus status = DropStatus::verified;
  u64 violating_j = 0;
  std::vector<PhiDropDetail> details;
  u64 sampled_even = 0;  // even m < 2y - 2k checked for phi(m) <= m/2 < y - k
};

// phi(2y - 2j) < y - k for j in 1..k. The prime divisors of y - j known
// from the construction (block j) plus 2 and any found by trial division
// up to `trial_cap` give phi(2y - 2j) <= (2y - 2j) prod (1 - 1/p), which
// settles the inequality when it already falls below y - k. A cofactor that
// is 1 or a probable prime below `prime_test_bits` gives the exact value.
// Otherwise the outcome is unverified, never violated.
PhiDropOutcome verify_phi_drop(const CrtWitness& w, u64 trial_cap = 1'000'000, u64 prime_test_bits = 4096);

}  // namespace phiorbit
