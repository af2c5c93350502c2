#include "phiorbit/records.hpp"

#include <cmath>
#include <limits>

#include "phiorbit/primes.hpp"

namespace phiorbit {

json make_record(std::string_view type, json inputs, json outputs) {
  return json{{"record_type", type},
              {"version", kRecordVersion},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)}};
}

json bigint_to_json(const mpz_class& v) { return v.get_str(10); }

mpz_class bigint_from_json(const json& j) {
  if (!j.is_string()) throw InvalidArgument("expected a decimal string for a big integer");
  mpz_class v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw InvalidArgument("malformed big integer");
  return v;
}

// Always "num/den" in lowest terms, also for integers.
json rational_to_json(const mpq_class& v) {
  mpq_class c(v);
  c.canonicalize();
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

mpq_class rational_from_json(const json& j) {
  if (!j.is_string()) throw InvalidArgument("expected a rational string");
  mpq_class v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw InvalidArgument("malformed rational");
  v.canonicalize();
  return v;
}

json real_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (!std::isfinite(v)) throw InvalidArgument("cannot serialize a NaN or -inf value");
  return v;
}

double real_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

// Avoids a full decimal conversion of huge values: the digit count comes
// from one power-of-ten comparison and the edges from one division each.
json bigint_summary_json(const mpz_class& v, std::size_t max_digits) {
  const std::size_t edge = 20;
  std::size_t digits = mpz_sizeinbase(v.get_mpz_t(), 10);  // exact or one too large
  if (digits <= max_digits || digits <= 2 * edge) return v.get_str(10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits - 1);
  if (abs(v) < p) --digits;
  if (digits <= max_digits) return v.get_str(10);
  mpz_class lead, tail, ten_edge;
  mpz_ui_pow_ui(ten_edge.get_mpz_t(), 10, edge);
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits - edge);
  mpz_tdiv_q(lead.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  mpz_tdiv_r(tail.get_mpz_t(), v.get_mpz_t(), ten_edge.get_mpz_t());
  std::string t = mpz_class(abs(tail)).get_str(10);
  t.insert(0, edge - t.size(), '0');
  return json{{"bits", mpz_sizeinbase(v.get_mpz_t(), 2)},
              {"decimal_digits", digits},
              {"leading", lead.get_str(10)},
              {"trailing", t}};
}

// ---- totient-core ----

void to_json(json& j, const PrimePower& v) { j = json::array({v.prime, v.exponent}); }
void from_json(const json& j, PrimePower& v) {
  v.prime = j.at(0).get<u64>();
  v.exponent = j.at(1).get<unsigned>();
}

void to_json(json& j, const FactoredInteger& v) { j = json{{"value", v.value}, {"factors", v.factors}}; }
void from_json(const json& j, FactoredInteger& v) {
  v.value = j.at("value").get<u64>();
  v.factors = j.at("factors").get<std::vector<PrimePower>>();
}

void to_json(json& j, const PhiChain& v) {
  j = json{{"start", v.start}, {"chain", v.chain}, {"pillai_n", v.pillai_n}};
}
void from_json(const json& j, PhiChain& v) {
  v.start = j.at("start").get<u64>();
  v.chain = j.at("chain").get<std::vector<u64>>();
  v.pillai_n = j.at("pillai_n").get<u64>();
}

void to_json(json& j, const PillaiBounds& v) { j = json{{"lower", v.lower}, {"upper", v.upper}}; }
void from_json(const json& j, PillaiBounds& v) {
  v.lower = j.at("lower").get<u64>();
  v.upper = j.at("upper").get<u64>();
}

void to_json(json& j, const AverageCheck& v) {
  j = json{{"mean", rational_to_json(v.mean)},
           {"reference", real_to_json(v.reference)},
           {"abs_error", real_to_json(v.abs_error)}};
}
void from_json(const json& j, AverageCheck& v) {
  v.mean = rational_from_json(j.at("mean"));
  v.reference = real_from_json(j.at("reference"));
  v.abs_error = real_from_json(j.at("abs_error"));
}

void to_json(json& j, const LehmerHit& v) { j = json{{"q", v.q}, {"ratio", v.ratio}}; }
void from_json(const json& j, LehmerHit& v) {
  v.q = j.at("q").get<u64>();
  v.ratio = j.at("ratio").get<u64>();
}

// ---- orbit-engine ----

void to_json(json& j, const Guards& v) {
  j = json{{"max_steps", v.max_steps}, {"max_value", v.max_value}, {"max_states", v.max_states}};
}
void from_json(const json& j, Guards& v) {
  v.max_steps = j.at("max_steps").get<u64>();
  v.max_value = j.at("max_value").get<u64>();
  v.max_states = j.at("max_states").get<u64>();
}

void to_json(json& j, const OrbitSpec& v) {
  j = json{{"d", v.d}, {"k", v.k}, {"kind", to_string(v.kind)}, {"seeds", v.seeds}, {"guards", v.guards}};
}
void from_json(const json& j, OrbitSpec& v) {
  v.d = j.at("d").get<unsigned>();
  v.k = j.at("k").get<u64>();
  v.kind = parse_function_kind(j.at("kind").get<std::string>());
  v.seeds = j.at("seeds").get<std::vector<u64>>();
  v.guards = j.at("guards").get<Guards>();
}

void to_json(json& j, const OrbitResult& v) {
  j = json{{"preperiod", v.preperiod}, {"period", v.period},         {"cycle", v.cycle},
           {"sup_seen", v.sup_seen},   {"steps_used", v.steps_used}, {"terminated", to_string(v.terminated)}};
}
void from_json(const json& j, OrbitResult& v) {
  v.preperiod = j.at("preperiod").get<u64>();
  v.period = j.at("period").get<u64>();
  v.cycle = j.at("cycle").get<std::vector<u64>>();
  v.sup_seen = j.at("sup_seen").get<u64>();
  v.steps_used = j.at("steps_used").get<u64>();
  v.terminated = parse_termination(j.at("terminated").get<std::string>());
}

void to_json(json& j, const GrowthSample& v) { j = json::array({v.step, v.value}); }
void from_json(const json& j, GrowthSample& v) {
  v.step = j.at(0).get<u64>();
  v.value = j.at(1).get<u64>();
}

// ---- bounds-verifier ----

void to_json(json& j, const DropWitness& v) { j = json::array({v.r, v.i}); }
void from_json(const json& j, DropWitness& v) {
  v.r = j.at(0).get<u64>();
  v.i = j.at(1).get<u64>();
}

void to_json(json& j, const Thm1Report& v) {
  j = json{{"x1", v.x1},
           {"k", v.k},
           {"bound", v.bound},
           {"sup_seen", v.sup_seen},
           {"orbit", v.orbit},
           {"claim_drops", v.claim_drops},
           {"claim_failures", v.claim_failures},
           {"trivial_bound_violations", v.trivial_bound_violations},
           {"entry_violations", v.entry_violations},
           {"ok", v.ok},
           {"verdict", to_string(v.verdict())}};
}
void from_json(const json& j, Thm1Report& v) {
  v.x1 = j.at("x1").get<u64>();
  v.k = j.at("k").get<u64>();
  v.bound = j.at("bound").get<u64>();
  v.sup_seen = j.at("sup_seen").get<u64>();
  v.orbit = j.at("orbit").get<OrbitResult>();
  v.claim_drops = j.at("claim_drops").get<std::vector<DropWitness>>();
  v.claim_failures = j.at("claim_failures").get<std::vector<u64>>();
  v.trivial_bound_violations = j.at("trivial_bound_violations").get<u64>();
  v.entry_violations = j.at("entry_violations").get<u64>();
  v.ok = j.at("ok").get<bool>();
}

void to_json(json& j, const Thm2Report& v) {
  j = json{{"x1", v.x1},
           {"x2", v.x2},
           {"k", v.k},
           {"X", rational_to_json(mpq_class(static_cast<unsigned long>(v.twice_X), 2UL))},
           {"log2_bound", real_to_json(v.log2_bound)},
           {"sup_seen", v.sup_seen},
           {"orbit", v.orbit},
           {"parity_applies", v.parity_applies},
           {"parity_ok", v.parity_ok},
           {"base_case", v.base_case},
           {"base_case_ok", v.base_case_ok},
           {"early_terms_ok", v.early_terms_ok},
           {"min_x3_x4_ok", v.min_x3_x4_ok},
           {"ok", v.ok},
           {"verdict", to_string(v.verdict())}};
}
void from_json(const json& j, Thm2Report& v) {
  v.x1 = j.at("x1").get<u64>();
  v.x2 = j.at("x2").get<u64>();
  v.k = j.at("k").get<u64>();
  const mpq_class X = rational_from_json(j.at("X"));
  const mpz_class twice = X.get_num() * 2 / X.get_den();
  v.twice_X = mpz_get_ui(twice.get_mpz_t());
  v.X = static_cast<double>(v.twice_X) / 2.0;
  v.log2_bound = real_from_json(j.at("log2_bound"));
  v.sup_seen = j.at("sup_seen").get<u64>();
  v.orbit = j.at("orbit").get<OrbitResult>();
  v.parity_applies = j.at("parity_applies").get<bool>();
  v.parity_ok = j.at("parity_ok").get<bool>();
  v.base_case = j.at("base_case").get<bool>();
  v.base_case_ok = j.at("base_case_ok").get<bool>();
  v.early_terms_ok = j.at("early_terms_ok").get<bool>();
  v.min_x3_x4_ok = j.at("min_x3_x4_ok").get<bool>();
  v.ok = j.at("ok").get<bool>();
}

void to_json(json& j, const Prop1Report& v) {
  j = json{{"kind", to_string(v.kind)},
           {"C", v.C},
           {"rhs", v.rhs},
           {"rhs_argmax", v.rhs_argmax},
           {"probe_limit", v.probe_limit},
           {"precondition_ok", v.precondition_ok},
           {"precondition_counterexample", v.precondition_counterexample},
           {"seed_min", v.seed_min},
           {"seed_max", v.seed_max},
           {"orbits_checked", v.orbits_checked},
           {"non_verdicts", v.non_verdicts},
           {"limsup_max", v.limsup_max},
           {"cycles", v.cycles},
           {"cycle_seed_counts", v.cycle_seed_counts},
           {"ok", v.ok}};
}
void from_json(const json& j, Prop1Report& v) {
  v.kind = parse_function_kind(j.at("kind").get<std::string>());
  v.C = j.at("C").get<u64>();
  v.rhs = j.at("rhs").get<u64>();
  v.rhs_argmax = j.at("rhs_argmax").get<u64>();
  v.probe_limit = j.at("probe_limit").get<u64>();
  v.precondition_ok = j.at("precondition_ok").get<bool>();
  v.precondition_counterexample = j.at("precondition_counterexample").get<u64>();
  v.seed_min = j.at("seed_min").get<u64>();
  v.seed_max = j.at("seed_max").get<u64>();
  v.orbits_checked = j.at("orbits_checked").get<u64>();
  v.non_verdicts = j.at("non_verdicts").get<u64>();
  v.limsup_max = j.at("limsup_max").get<u64>();
  v.cycles = j.at("cycles").get<std::vector<std::vector<u64>>>();
  v.cycle_seed_counts = j.at("cycle_seed_counts").get<std::vector<u64>>();
  v.ok = j.at("ok").get<bool>();
}

void to_json(json& j, const ExploreRecord& v) {
  j = json{{"q", v.q},
           {"orbit", v.orbit},
           {"constant", v.constant},
           {"lehmer_flag", v.lehmer_flag},
           {"growth", v.growth}};
}
void from_json(const json& j, ExploreRecord& v) {
  v.q = j.at("q").get<u64>();
  v.orbit = j.at("orbit").get<OrbitResult>();
  v.constant = j.at("constant").get<bool>();
  v.lehmer_flag = j.at("lehmer_flag").get<bool>();
  v.growth = j.at("growth").get<std::vector<GrowthSample>>();
}

void to_json(json& j, const ExploreReport& v) {
  j = json{{"d", v.d},
           {"k", v.k},
           {"records", v.records},
           {"cycles", v.cycles},
           {"guard_hits", v.guard_hits},
           {"constant_orbits", v.constant_orbits},
           {"lehmer_flags", v.lehmer_flags}};
}
void from_json(const json& j, ExploreReport& v) {
  v.d = j.at("d").get<unsigned>();
  v.k = j.at("k").get<u64>();
  v.records = j.at("records").get<std::vector<ExploreRecord>>();
  v.cycles = j.at("cycles").get<u64>();
  v.guard_hits = j.at("guard_hits").get<u64>();
  v.constant_orbits = j.at("constant_orbits").get<u64>();
  v.lehmer_flags = j.at("lehmer_flags").get<u64>();
}

// ---- mertens-crt ----

void to_json(json& j, const MertensEnvelope& v) {
  j = json{{"x", v.x},
           {"product", rational_to_json(v.product)},
           {"rs_lower", real_to_json(v.rs_lower)},
           {"rs_upper", real_to_json(v.rs_upper)},
           {"lower_margin", real_to_json(v.lower_margin)},
           {"upper_margin", real_to_json(v.upper_margin)},
           {"error_bound", real_to_json(v.error_bound)},
           {"lower_ok", v.lower_ok},
           {"upper_ok", v.upper_ok}};
}
void from_json(const json& j, MertensEnvelope& v) {
  v.x = j.at("x").get<u64>();
  v.product = rational_from_json(j.at("product"));
  v.rs_lower = real_from_json(j.at("rs_lower"));
  v.rs_upper = real_from_json(j.at("rs_upper"));
  v.lower_margin = real_from_json(j.at("lower_margin"));
  v.upper_margin = real_from_json(j.at("upper_margin"));
  v.error_bound = real_from_json(j.at("error_bound"));
  v.lower_ok = j.at("lower_ok").get<bool>();
  v.upper_ok = j.at("upper_ok").get<bool>();
}

void to_json(json& j, const CorollaryCheck& v) {
  j = json{{"x", v.x}, {"prime_count", v.prime_count}, {"product", rational_to_json(v.product)}, {"ok", v.ok}};
}
void from_json(const json& j, CorollaryCheck& v) {
  v.x = j.at("x").get<u64>();
  v.prime_count = j.at("prime_count").get<u64>();
  v.product = rational_from_json(j.at("product"));
  v.ok = j.at("ok").get<bool>();
}

void to_json(json& j, const ChebyshevCheck& v) {
  j = json{{"x", v.x},
           {"primorial_log2", real_to_json(v.primorial_log2)},
           {"margin", real_to_json(v.margin)},
           {"error_bound", real_to_json(v.error_bound)},
           {"exact_ok", v.exact_ok},
           {"ok", v.ok}};
}
void from_json(const json& j, ChebyshevCheck& v) {
  v.x = j.at("x").get<u64>();
  v.primorial_log2 = real_from_json(j.at("primorial_log2"));
  v.margin = real_from_json(j.at("margin"));
  v.error_bound = real_from_json(j.at("error_bound"));
  v.exact_ok = j.at("exact_ok").get<bool>();
  v.ok = j.at("ok").get<bool>();
}

void to_json(json& j, const CrtWitness& v) { j = witness_json(v, std::numeric_limits<std::size_t>::max()); }

json witness_json(const CrtWitness& v, std::size_t max_digits) {
  json j;
  json blocks = json::array();
  for (std::size_t b = 0; b + 1 < v.r.size(); ++b) {
    const auto ps = v.block(b);
    blocks.push_back(json{{"j", b}, {"first_prime", ps.front()}, {"last_prime", ps.back()}, {"count", ps.size()}});
  }
  json q = json::array();
  for (const auto& x : v.q) q.push_back(bigint_summary_json(x, max_digits));
  j = json{{"X", v.X}, {"k", v.k}, {"r", v.r}, {"blocks", blocks}, {"q", q}, {"y", bigint_summary_json(v.y, max_digits)}};
  if (v.primes.size() <= kInlinePrimeLimit) j["primes"] = v.primes;
  return j;
}
void from_json(const json& j, CrtWitness& v) {
  v.X = j.at("X").get<u64>();
  v.k = j.at("k").get<u64>();
  v.r = j.at("r").get<std::vector<u64>>();
  v.q.clear();
  for (const auto& x : j.at("q")) v.q.push_back(bigint_from_json(x));
  v.y = bigint_from_json(j.at("y"));
  if (j.contains("primes")) {
    v.primes = j.at("primes").get<std::vector<u64>>();
  } else {
    const u64 count = v.r.empty() ? 0 : v.r.back() - 1;
    const u64 last = j.at("blocks").back().at("last_prime").get<u64>();
    v.primes.clear();
    v.primes.reserve(count);
    PrimeStream stream(v.X, last);
    for (u64 p = stream.next(); p != 0 && v.primes.size() < count; p = stream.next()) v.primes.push_back(p);
  }
}

void to_json(json& j, const WitnessVerification& v) {
  j = json{{"primes_ok", v.primes_ok},         {"q_ok", v.q_ok},           {"blocks_ok", v.blocks_ok},
           {"coprime_ok", v.coprime_ok},       {"congruences_ok", v.congruences_ok},
           {"y_bound_ok", v.y_bound_ok},       {"r_bound_ok", v.r_bound_ok},
           {"detail", v.detail},               {"ok", v.ok()}};
}
void from_json(const json& j, WitnessVerification& v) {
  v.primes_ok = j.at("primes_ok").get<bool>();
  v.q_ok = j.at("q_ok").get<bool>();
  v.blocks_ok = j.at("blocks_ok").get<bool>();
  v.coprime_ok = j.at("coprime_ok").get<bool>();
  v.congruences_ok = j.at("congruences_ok").get<bool>();
  v.y_bound_ok = j.at("y_bound_ok").get<bool>();
  v.r_bound_ok = j.at("r_bound_ok").get<bool>();
  v.detail = j.at("detail").get<std::string>();
}

void to_json(json& j, const PhiDropDetail& v) {
  j = json{{"j", v.j}, {"exact", v.exact}, {"status", to_string(v.status)}};
}
void from_json(const json& j, PhiDropDetail& v) {
  v.j = j.at("j").get<u64>();
  v.exact = j.at("exact").get<bool>();
  v.status = parse_drop_status(j.at("status").get<std::string>());
}

void to_json(json& j, const PhiDropOutcome& v) {
  j = json{{"status", to_string(v.status)},
           {"violating_j", v.violating_j},
           {"details", v.details},
           {"sampled_even", v.sampled_even}};
}
void from_json(const json& j, PhiDropOutcome& v) {
  v.status = parse_drop_status(j.at("status").get<std::string>());
  v.violating_j = j.at("violating_j").get<u64>();
  v.details = j.at("details").get<std::vector<PhiDropDetail>>();
  v.sampled_even = j.at("sampled_even").get<u64>();
}

}  // namespace phiorbit
