#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "phiorbit/errors.hpp"
#include "phiorbit/orbit.hpp"
#include "phiorbit/totient.hpp"

using namespace phiorbit;

namespace {

const PhiSieve& sieve() {
  static const PhiSieve s(1 << 20, u64{1} << 27);
  return s;
}

OrbitSpec make(unsigned d, u64 k, std::vector<u64> seeds, FunctionKind kind = FunctionKind::phi_sum) {
  OrbitSpec s;
  s.d = d;
  s.k = k;
  s.kind = kind;
  s.seeds = std::move(seeds);
  return s;
}

// Reference answer straight from the definitions: every state is stored.
struct Reference {
  u64 mu, lambda, sup;
  std::vector<u64> cycle;
};

Reference reference(const OrbitSpec& spec) {
  std::vector<u64> terms = spec.seeds;
  std::map<std::vector<u64>, u64> seen;
  for (u64 i = 0;; ++i) {
    while (terms.size() < i + spec.d) {
      terms.push_back(step(std::span<const u64>(terms).subspan(terms.size() - spec.d), spec, &sieve()));
    }
    std::vector<u64> state(terms.begin() + i, terms.begin() + i + spec.d);
    auto [it, fresh] = seen.emplace(state, i);
    if (!fresh) {
      Reference r{it->second, i - it->second, 0, {}};
      r.cycle.assign(terms.begin() + r.mu, terms.begin() + r.mu + r.lambda);
      r.sup = *std::max_element(terms.begin(), terms.begin() + r.mu + r.lambda + spec.d - 1);
      return r;
    }
  }
}

}  // namespace

TEST(Orbit, OracleExamples) {
  struct Case {
    OrbitSpec spec;
    u64 mu, lambda, sup;
    std::vector<u64> cycle;
  };
  const std::vector<Case> cases{
      {make(1, 0, {10}), 3, 1, 10, {1}},
      {make(1, 2, {3}), 1, 1, 4, {4}},
      {make(2, 0, {3, 5}), 4, 1, 6, {4}},
      {make(2, 2, {2, 2}), 5, 1, 10, {10}},
      {make(1, 1, {5}), 0, 1, 5, {5}},
      {make(2, 0, {1, 1}), 2, 1, 2, {2}},
      {make(1, 20, {97}), 6, 2, 116, {36, 32}},
      {make(2, 6, {123, 77}), 9, 3, 146, {88, 86, 88}},
      {make(1, 0, {4}, FunctionKind::digit_square_sum), 0, 8, 145, {4, 16, 37, 58, 89, 145, 42, 20}},
  };
  for (const auto& c : cases) {
    for (const bool naive : {false, true}) {
      const OrbitResult r = naive ? detect_cycle_naive(c.spec, &sieve()) : detect_cycle(c.spec, &sieve());
      EXPECT_TRUE(r.found());
      EXPECT_EQ(r.preperiod, c.mu) << c.spec.seeds[0];
      EXPECT_EQ(r.period, c.lambda) << c.spec.seeds[0];
      EXPECT_EQ(r.sup_seen, c.sup) << c.spec.seeds[0];
      EXPECT_EQ(r.cycle, c.cycle) << c.spec.seeds[0];
      EXPECT_EQ(r.steps_used, c.mu + c.lambda);
    }
  }
}

TEST(Orbit, TraceMatchesOracle) {
  EXPECT_EQ(trace(make(2, 0, {3, 5}), 8, &sieve()), (std::vector<u64>{3, 5, 6, 6, 4, 4, 4, 4}));
  EXPECT_EQ(trace(make(2, 2, {2, 2}), 7, &sieve()), (std::vector<u64>{2, 2, 4, 5, 8, 10, 10}));
  EXPECT_EQ(trace(make(4, 0, {1, 1, 1, 1}), 16, &sieve()),
            (std::vector<u64>{1, 1, 1, 1, 4, 5, 8, 11, 20, 26, 34, 46, 58, 78, 90, 98}));
  // no sieve: every phi through factorization
  EXPECT_EQ(trace(make(4, 0, {1, 1, 1, 1}), 16, nullptr), trace(make(4, 0, {1, 1, 1, 1}), 16, &sieve()));
}

TEST(Orbit, DigitSquareAndMaxPlusC) {
  EXPECT_EQ(digit_square_sum(0), 0u);
  EXPECT_EQ(digit_square_sum(99), 162u);
  EXPECT_EQ(digit_square_sum(1234), 30u);
  const std::vector<u64> w{3, 9, 4};
  EXPECT_EQ(step(w, make(3, 5, {1, 1, 1}, FunctionKind::max_plus_c)), 14u);
  // max-plus-c with c >= 1 grows forever: guard outcome
  OrbitSpec grow = make(1, 1, {1}, FunctionKind::max_plus_c);
  grow.guards.max_steps = 1000;
  const OrbitResult r = detect_cycle(grow);
  EXPECT_EQ(r.terminated, Termination::guard_max_steps);
  EXPECT_EQ(r.steps_used, 1000u);
  EXPECT_TRUE(r.cycle.empty());
}

TEST(Orbit, Guards) {
  OrbitSpec s = make(1, 0, {1'000'000});
  s.guards.max_value = 1000;
  EXPECT_EQ(detect_cycle(s, &sieve()).terminated, Termination::guard_max_value);

  OrbitSpec m = make(1, 1, {1}, FunctionKind::max_plus_c);
  m.guards.max_states = 50;
  EXPECT_EQ(detect_cycle_naive(m).terminated, Termination::guard_max_memory);
}

TEST(Orbit, Validation) {
  EXPECT_THROW(make(2, 0, {1}).validate(), InvalidArgument);
  EXPECT_THROW(make(1, 0, {0}).validate(), InvalidArgument);
  EXPECT_THROW(make(0, 0, {}).validate(), InvalidArgument);
  EXPECT_THROW(detect_cycle(make(1, 0, {0})), InvalidArgument);
  EXPECT_EQ(parse_function_kind("phi-sum"), FunctionKind::phi_sum);
  EXPECT_EQ(to_string(Termination::guard_max_steps), "guard-max-steps");
  EXPECT_THROW(parse_function_kind("nope"), InvalidArgument);
}

TEST(Orbit, OverflowIsNotSilent) {
  // phi of a prime near the 64-bit limit plus a huge shift overflows
  OrbitSpec s = make(1, u64{1} << 63, {18446744073709551557ULL});
  s.guards.max_value = ~u64{0};
  const auto r = [&] { return detect_cycle(s); };
  EXPECT_THROW(r(), OverflowError);
}

// d = 2 with odd k and d >= 3 can grow without bound, so the property is
// checked where every orbit is known to be periodic.
TEST(OrbitProperty, DetectorsAgreeWithReference) {
  for (unsigned d = 1; d <= 2; ++d) {
    for (u64 k = 0; k <= 6; k += d) {
      for (u64 a = 1; a <= 40; ++a) {
        std::vector<u64> seeds(d, a);
        seeds[0] = a * 7 % 53 + 1;
        const OrbitSpec spec = make(d, k, seeds);
        const Reference ref = reference(spec);
        const OrbitResult brent = detect_cycle(spec, &sieve());
        ASSERT_EQ(brent, detect_cycle_naive(spec, &sieve()));
        ASSERT_EQ(brent.preperiod, ref.mu);
        ASSERT_EQ(brent.period, ref.lambda);
        ASSERT_EQ(brent.sup_seen, ref.sup);
        ASSERT_EQ(brent.cycle, ref.cycle);
      }
    }
  }
}

TEST(OrbitProperty, CycleIsMinimalAndPeriodic) {
  for (u64 k = 0; k <= 10; k += 2) {
    for (u64 a = 1; a <= 60; ++a) {
      const OrbitSpec spec = make(2, k, {a, 61 - a});
      const OrbitResult r = detect_cycle(spec, &sieve());
      ASSERT_TRUE(r.found());
      const auto terms = trace(spec, r.preperiod + 3 * r.period + 2, &sieve());
      for (u64 i = r.preperiod; i + r.period < terms.size(); ++i) ASSERT_EQ(terms[i], terms[i + r.period]);
      // no smaller period divides the cycle of states
      for (u64 p = 1; p < r.period; ++p) {
        bool same = true;
        for (u64 i = r.preperiod; i < r.preperiod + r.period + 1 && same; ++i) same = terms[i] == terms[i + p];
        ASSERT_FALSE(same) << "period " << p << " also works";
      }
      // preperiod is minimal: state preperiod-1 is not on the cycle
      if (r.preperiod > 0) {
        const u64 b = r.preperiod - 1;
        ASSERT_FALSE(terms[b] == terms[b + r.period] && terms[b + 1] == terms[b + 1 + r.period]);
      }
      for (u64 i = 0; i < 4 * r.period; ++i) {
        const u64 idx = r.preperiod + i;
        if (idx < terms.size()) ASSERT_EQ(periodic_term(terms, r.preperiod, r.period, idx), terms[idx]);
      }
    }
  }
}

TEST(OrbitProperty, Deterministic) {
  const OrbitSpec spec = make(2, 4, {17, 91});
  EXPECT_EQ(detect_cycle(spec, &sieve()), detect_cycle(spec, &sieve()));
  EXPECT_EQ(detect_cycle(spec, nullptr), detect_cycle(spec, &sieve()));
}

TEST(Growth, PowersOfTwoUntilGuard) {
  OrbitSpec s = make(1, 1, {1}, FunctionKind::max_plus_c);
  s.guards.max_steps = 100;
  const auto g = growth_profile(s);
  ASSERT_FALSE(g.empty());
  EXPECT_EQ(g.front().step, 1u);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_EQ(g[i].step, 2 * g[i - 1].step);
  EXPECT_EQ(g[g.size() - 2].step, 64u);
  EXPECT_EQ(g.back().step, 100u);
  EXPECT_EQ(g.back().value, 101u);
}
