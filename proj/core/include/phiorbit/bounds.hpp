#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "phiorbit/orbit.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit {

enum class Verdict { ok, violated, non_verdict };
std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

// Term indices in reports are 1-based, matching x_1, x_2, ...

// x_{r+i} < x_r with the least such i in 1..k.
struct DropWitness {
  u64 r = 0;
  u64 i = 0;

  friend bool operator==(const DropWitness&, const DropWitness&) = default;
};

struct ClaimCheck {
  std::vector<DropWitness> witnesses;
  std::vector<u64> failures;  // qualifying r with no drop inside 1..k
  std::vector<u64> untested;  // qualifying r too close to the end of the orbit

  bool ok() const { return failures.empty(); }
};

// For every r with orbit[r] >= k^4, looks for the least i in 1..k with
// orbit[r+i] < orbit[r]. Requires k >= 2. `max_r` (1-based, inclusive)
// limits which r are examined; 0 means all.
ClaimCheck check_thm1_claim(std::span<const u64> orbit, u64 k, u64 max_r = 0);

// max{x1, k^4} + (k+1)^2; throws OverflowError past 64 bits.
u64 thm1_bound(u64 x1, u64 k);

struct Thm1Report {
  u64 x1 = 1;
  u64 k = 0;
  u64 bound = 0;
  u64 sup_seen = 0;
  OrbitResult orbit;
  std::vector<DropWitness> claim_drops;
  std::vector<u64> claim_failures;
  u64 trivial_bound_violations = 0;  // x_{n+1} <= max{x_n + k - 1, k + 1}, k >= 2
  u64 entry_violations = 0;          // first x_r >= k^4 after a sub-k^4 term is <= k^4 + k
  bool ok = false;                   // sup_seen <= bound

  Verdict verdict() const;
};

Thm1Report check_thm1(u64 x1, u64 k, const Guards& guards = {}, const PhiSieve* sieve = nullptr);

struct Thm2Report {
  u64 x1 = 1;
  u64 x2 = 1;
  u64 k = 0;
  u64 twice_X = 0;        // 3 x1 + 5 x2 + 7 k
  double X = 0;           // twice_X / 2
  double log2_bound = 0;  // 2 * X^(3^(k+1)), +inf on overflow
  u64 sup_seen = 0;
  OrbitResult orbit;
  bool parity_applies = false;  // max{x1,x2} >= 3 or k >= 1
  bool parity_ok = true;        // x_n even for all n >= 5 when it applies
  bool base_case = false;       // max{x1,x2} <= 2 and k = 0
  bool base_case_ok = true;     // then x_n = 2 for all n >= 3
  bool early_terms_ok = true;   // max{x_1..x_6} <= 2X
  bool min_x3_x4_ok = true;     // min{x_3, x_4} >= 3 outside the base case
  bool ok = false;              // log2(sup_seen) <= log2_bound

  Verdict verdict() const;
};

double thm2_log2_bound(double X, u64 k);

// k must be even (InvalidArgument otherwise).
Thm2Report check_thm2(u64 x1, u64 x2, u64 k, const Guards& guards = {}, const PhiSieve* sieve = nullptr);

struct Prop1Report {
  FunctionKind kind = FunctionKind::digit_square_sum;
  u64 C = 0;
  u64 rhs = 0;  // max{f(m) : 1 <= m <= C-1}
  u64 rhs_argmax = 0;
  u64 probe_limit = 0;
  bool precondition_ok = true;       // f(n) < n for every probed n in [C, probe_limit]
  u64 precondition_counterexample = 0;
  u64 seed_min = 1;
  u64 seed_max = 0;
  u64 orbits_checked = 0;
  u64 non_verdicts = 0;
  u64 limsup_max = 0;                        // max over all detected cycles
  std::vector<std::vector<u64>> cycles;      // distinct, rotated to start at the minimum
  std::vector<u64> cycle_seed_counts;        // seeds ending in each cycle
  bool ok = false;                           // precondition_ok and limsup_max <= rhs
};

// d = 1 harness for a function satisfying f(n) < n for n >= C.
Prop1Report run_prop1_harness(FunctionKind kind, u64 seed_min, u64 seed_max, u64 C,
                              u64 probe_limit = 1'000'000, const PhiSieve* sieve = nullptr);

struct ExploreRecord {
  u64 q = 0;  // every seed equals q
  OrbitResult orbit;
  bool constant = false;     // d * phi(q) + k == q
  bool lehmer_flag = false;  // constant, q composite and phi(q) | q - 1
  std::vector<GrowthSample> growth;  // only for guard outcomes
};

struct ExploreReport {
  unsigned d = 3;
  u64 k = 0;
  std::vector<ExploreRecord> records;
  u64 cycles = 0;
  u64 guard_hits = 0;
  u64 constant_orbits = 0;
  u64 lehmer_flags = 0;
};

// Orbits of the d-term phi-sum recurrence from constant seeds (q, ..., q)
// for q in [q_min, q_max]. Requires d >= 3.
ExploreReport explore_dterm(unsigned d, u64 k, u64 q_min, u64 q_max, const Guards& guards = {},
                            const PhiSieve* sieve = nullptr);

}  // namespace phiorbit
