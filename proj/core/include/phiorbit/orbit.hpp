#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phiorbit/checked.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit {

// Right-hand side f of x_{n+d} = f(x_n, ..., x_{n+d-1}).
enum class FunctionKind {
  phi_sum,           // phi(x_n) + ... + phi(x_{n+d-1}) + k
  digit_square_sum,  // sum of squared base-10 digits over the window, + k
  max_plus_c,        // max(window) + k
};

enum class Termination {
  cycle_found,
  guard_max_steps,
  guard_max_value,
  guard_max_memory,  // naive detector only
};

std::string_view to_string(FunctionKind kind);
std::string_view to_string(Termination t);
FunctionKind parse_function_kind(std::string_view s);
Termination parse_termination(std::string_view s);

struct Guards {
  u64 max_steps = 10'000'000;
  u64 max_value = u64{1} << 63;
  u64 max_states = 20'000'000;  // history size cap for the naive detector
};

struct OrbitSpec {
  unsigned d = 1;
  u64 k = 0;
  FunctionKind kind = FunctionKind::phi_sum;
  std::vector<u64> seeds;
  Guards guards;

  // Throws InvalidArgument unless seeds.size() == d, every seed >= 1 and
  // the guards are positive.
  void validate() const;
};

// Terms are indexed from 0 (term 0 is the first seed); state i is the
// window of terms i..i+d-1. For cycle_found results:
//   state(preperiod) == state(preperiod + period), both minimal;
//   cycle = terms preperiod .. preperiod+period-1;
//   sup_seen = max over terms 0 .. preperiod+period+d-2, which is the
//              supremum of the whole sequence;
//   steps_used = preperiod + period, the number of generated terms needed to
//              exhibit the repeat (identical for both detectors).
// For guard outcomes preperiod/period are 0, cycle is empty, sup_seen is
// the max over what was generated and steps_used is the evaluation count.
struct OrbitResult {
  u64 preperiod = 0;
  u64 period = 0;
  std::vector<u64> cycle;
  u64 sup_seen = 0;
  u64 steps_used = 0;
  Termination terminated = Termination::cycle_found;

  bool found() const { return terminated == Termination::cycle_found; }
  friend bool operator==(const OrbitResult&, const OrbitResult&) = default;
};

// Evaluates f for one spec. Holds a non-owning pointer to a shared sieve;
// without a sieve every phi goes through factorization.
class Recurrence {
 public:
  explicit Recurrence(const OrbitSpec& spec, const PhiSieve* sieve = nullptr);

  // f(window); window.size() must equal d. Throws OverflowError instead of
  // wrapping.
  u64 operator()(std::span<const u64> window) const;

  const OrbitSpec& spec() const { return spec_; }

 private:
  u64 term(u64 x) const;

  OrbitSpec spec_;
  const PhiSieve* sieve_;
};

u64 digit_square_sum(u64 n);

// One application of f. Throws InvalidArgument on a window of the wrong
// length, OverflowError on 64-bit overflow.
u64 step(std::span<const u64> window, const OrbitSpec& spec, const PhiSieve* sieve = nullptr);

// Brent's algorithm on d-tuple states, then a second pass for the exact
// preperiod. Memory use is O(d).
OrbitResult detect_cycle(const OrbitSpec& spec, const PhiSieve* sieve = nullptr);

// Stores every visited state; the oracle for detect_cycle.
OrbitResult detect_cycle_naive(const OrbitSpec& spec, const PhiSieve* sieve = nullptr);

// The first `count` terms (seeds included). Ignores guards.
std::vector<u64> trace(const OrbitSpec& spec, u64 count, const PhiSieve* sieve = nullptr);

// Term `index` of a sequence whose first terms are `prefix` and which is
// periodic from `preperiod` with `period`.
u64 periodic_term(std::span<const u64> prefix, u64 preperiod, u64 period, u64 index);

}  // namespace phiorbit

namespace phiorbit {

struct GrowthSample {
  u64 step = 0;  // number of generated terms
  u64 value = 0;

  friend bool operator==(const GrowthSample&, const GrowthSample&) = default;
};

// Samples the orbit at steps 1, 2, 4, 8, ... until max_steps or max_value
// trips, or the next term would overflow 64 bits. The last generated term is
// always included.
std::vector<GrowthSample> growth_profile(const OrbitSpec& spec, const PhiSieve* sieve = nullptr);

}  // namespace phiorbit
