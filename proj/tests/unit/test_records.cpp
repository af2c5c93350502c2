#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "phiorbit/bounds.hpp"
#include "phiorbit/campaign.hpp"
#include "phiorbit/errors.hpp"
#include "phiorbit/mertens.hpp"
#include "phiorbit/records.hpp"

using namespace phiorbit;

namespace {

// serialize -> text -> parse -> deserialize -> serialize must be a fixed point
template <class T>
T round_trip(const T& v) {
  const json first = v;
  const T back = json::parse(first.dump()).get<T>();
  const json second = back;
  EXPECT_EQ(first.dump(), second.dump());
  return back;
}

const PhiSieve& sieve() {
  static const PhiSieve s(1 << 16, u64{1} << 27);
  return s;
}

}  // namespace

TEST(Records, Envelope) {
  const json r = make_record("orbit", json{{"a", 1}}, json{{"b", 2}});
  EXPECT_EQ(r.at("record_type"), "orbit");
  EXPECT_EQ(r.at("version"), std::string(kRecordVersion));
  EXPECT_EQ(r.at("inputs").at("a"), 1);
  EXPECT_EQ(r.at("outputs").at("b"), 2);
}

TEST(Records, Scalars) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    mpz_class v = 1;
    for (int j = 0; j < i; ++j) v *= static_cast<unsigned long>(rng());
    EXPECT_EQ(bigint_from_json(bigint_to_json(v)), v);
    EXPECT_TRUE(bigint_to_json(v).is_string());
    mpq_class q(v + 1, v * 3 + 2);
    q.canonicalize();
    EXPECT_EQ(rational_from_json(rational_to_json(q)), q);
  }
  EXPECT_EQ(rational_to_json(mpq_class(34, 2)), "17/1");
  EXPECT_EQ(real_to_json(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(real_from_json("inf"), std::numeric_limits<double>::infinity());
  EXPECT_EQ(real_from_json(0.1), 0.1);
  EXPECT_THROW(real_to_json(std::nan("")), InvalidArgument);
  EXPECT_THROW(bigint_from_json("12x"), InvalidArgument);
  EXPECT_THROW(rational_from_json(5), InvalidArgument);
}

TEST(Records, BigintSummary) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 10, 50);
  const json small = bigint_summary_json(v, 100);
  EXPECT_TRUE(small.is_string());
  const json big = bigint_summary_json(v, 20);
  EXPECT_EQ(big.at("decimal_digits"), 51);
  EXPECT_EQ(big.at("bits"), mpz_sizeinbase(v.get_mpz_t(), 2));
  EXPECT_EQ(big.at("leading"), "10000000000000000000");
  EXPECT_EQ(big.at("trailing"), "00000000000000000000");
  const mpz_class below = v - 1;
  const json b = bigint_summary_json(below, 20);
  EXPECT_EQ(b.at("decimal_digits"), 50);
  EXPECT_EQ(b.at("leading"), "99999999999999999999");
  EXPECT_EQ(bigint_summary_json(v * 7 + 123, 20).at("trailing"), "00000000000000000123");
  EXPECT_EQ(bigint_summary_json(below, 50), below.get_str());
}

TEST(Records, TotientTypes) {
  round_trip(factor(360));
  round_trip(phi_chain(100));
  round_trip(pillai_bounds(1000));
  round_trip(avg_phi_check(1000));
  round_trip(LehmerHit{561, 1});
}

TEST(Records, OrbitTypes) {
  OrbitSpec spec;
  spec.d = 2;
  spec.k = 6;
  spec.seeds = {123, 77};
  EXPECT_EQ(round_trip(detect_cycle(spec, &sieve())), detect_cycle(spec, &sieve()));
  const OrbitSpec back = round_trip(spec);
  EXPECT_EQ(back.seeds, spec.seeds);
  round_trip(spec.guards);
  round_trip(GrowthSample{8, 12345});
}

TEST(Records, OrbitResultRandomized) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    OrbitResult r;
    r.preperiod = rng();
    r.period = rng() % 50;
    for (u64 j = 0; j < r.period; ++j) r.cycle.push_back(rng());
    r.sup_seen = rng();
    r.steps_used = rng();
    r.terminated = static_cast<Termination>(rng() % 4);
    EXPECT_EQ(round_trip(r), r);
  }
}

TEST(Records, BoundsTypes) {
  round_trip(check_thm1(1000, 3, {}, &sieve()));
  const Thm2Report t = round_trip(check_thm2(123, 77, 6, {}, &sieve()));
  EXPECT_EQ(t.twice_X, 3u * 123 + 5 * 77 + 7 * 6);
  round_trip(check_thm2(1000, 1000, 10, {}, &sieve()));  // log2_bound is +inf
  round_trip(run_prop1_harness(FunctionKind::digit_square_sum, 1, 200, 100, 1000));
  round_trip(explore_dterm(3, 0, 1, 10, {}, &sieve()));
}

TEST(Records, MertensTypes) {
  const MertensEnvelope e = round_trip(mertens_product(1000));
  EXPECT_EQ(e.product, mertens_product(1000).product);
  round_trip(check_corollary(7));
  round_trip(chebyshev_check(1000));
}

TEST(Records, WitnessInlineAndReenumerated) {
  const CrtWitness w = build_crt_witness(6, 0);
  json j = w;
  ASSERT_TRUE(j.contains("primes"));
  EXPECT_EQ(j.get<CrtWitness>(), w);
  j.erase("primes");
  EXPECT_EQ(j.get<CrtWitness>(), w);

  const WitnessVerification v = round_trip(verify_crt_witness(w));
  EXPECT_TRUE(v.ok());
  round_trip(verify_phi_drop(build_crt_witness(6, 2)));
}

TEST(Records, CampaignTypes) {
  ScanConfig c;
  c.d = 2;
  c.k_min = 0;
  c.k_max = 4;
  c.k_step = 2;
  c.seed_max = 10;
  const ScanConfig back = round_trip(c);
  EXPECT_EQ(config_hash(back), config_hash(c));
  ScanAggregate a;
  a.records = 3;
  a.period_histogram[1] = 2;
  a.period_histogram[3] = 1;
  EXPECT_EQ(round_trip(a), a);
  round_trip(Checkpoint{config_hash(c), 17, a});
}
