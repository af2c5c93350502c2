#include "phiorbit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace phiorbit {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ok: return "ok";
    case Verdict::violated: return "violated";
    case Verdict::non_verdict: return "non-verdict";
  }
  return "?";
}

Verdict parse_verdict(std::string_view s) {
  for (auto v : {Verdict::ok, Verdict::violated, Verdict::non_verdict}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("unknown verdict '" + std::string(s) + "'");
}

namespace {

u64 fourth_power(u64 k) { return checked_mul(checked_mul(k, k), checked_mul(k, k), "k^4"); }

}  // namespace

ClaimCheck check_thm1_claim(std::span<const u64> orbit, u64 k, u64 max_r) {
  if (k < 2) throw InvalidArgument("check_thm1_claim: requires k >= 2");
  const u64 threshold = fourth_power(k);
  const u64 n = orbit.size();
  const u64 last_r = max_r == 0 ? n : std::min(max_r, n);
  ClaimCheck out;
  for (u64 r = 0; r < last_r; ++r) {
    if (orbit[r] < threshold) continue;
    bool found = false;
    bool truncated = false;
    for (u64 i = 1; i <= k; ++i) {
      if (r + i >= n) {
        truncated = true;
        break;
      }
      if (orbit[r + i] < orbit[r]) {
        out.witnesses.push_back({r + 1, i});
        found = true;
        break;
      }
    }
    if (found) continue;
    if (truncated) {
      out.untested.push_back(r + 1);
    } else {
      out.failures.push_back(r + 1);
    }
  }
  return out;
}

u64 thm1_bound(u64 x1, u64 k) {
  const u64 k1 = checked_add(k, 1);
  return checked_add(std::max(x1, fourth_power(k)), checked_mul(k1, k1), "theorem 1 bound");
}

Verdict Thm1Report::verdict() const {
  if (!orbit.found()) return Verdict::non_verdict;
  const bool all = ok && claim_failures.empty() && trivial_bound_violations == 0 && entry_violations == 0;
  return all ? Verdict::ok : Verdict::violated;
}

Thm1Report check_thm1(u64 x1, u64 k, const Guards& guards, const PhiSieve* sieve) {
  if (x1 == 0) throw InvalidArgument("check_thm1: x1 must be positive");
  Thm1Report rep;
  rep.x1 = x1;
  rep.k = k;
  rep.bound = thm1_bound(x1, k);

  OrbitSpec spec{1, k, FunctionKind::phi_sum, {x1}, guards};
  rep.orbit = detect_cycle(spec, sieve);
  rep.sup_seen = rep.orbit.sup_seen;
  if (!rep.orbit.found()) return rep;
  rep.ok = rep.sup_seen <= rep.bound;
  if (k < 2) return rep;

  // One full period plus k look-ahead terms covers every distinct index.
  const u64 span_len = rep.orbit.preperiod + rep.orbit.period;
  const std::vector<u64> terms = trace(spec, span_len + k, sieve);

  ClaimCheck claim = check_thm1_claim(terms, k, span_len);
  rep.claim_drops = std::move(claim.witnesses);
  rep.claim_failures = std::move(claim.failures);
  // untested is empty by construction (k look-ahead terms are present)

  const u64 k4 = fourth_power(k);
  for (u64 n = 0; n < span_len; ++n) {
    if (terms[n + 1] > std::max(terms[n] + k - 1, k + 1)) ++rep.trivial_bound_violations;
  }
  for (u64 r = 1; r <= span_len; ++r) {
    if (terms[r] >= k4 && terms[r - 1] < k4 && terms[r] > k4 + k) ++rep.entry_violations;
  }
  return rep;
}

double thm2_log2_bound(double X, u64 k) {
  const double exponent = std::pow(3.0, static_cast<double>(k) + 1.0);
  return 2.0 * std::pow(X, exponent);
}

Verdict Thm2Report::verdict() const {
  if (!orbit.found()) return Verdict::non_verdict;
  const bool all = ok && parity_ok && base_case_ok && early_terms_ok && min_x3_x4_ok;
  return all ? Verdict::ok : Verdict::violated;
}

Thm2Report check_thm2(u64 x1, u64 x2, u64 k, const Guards& guards, const PhiSieve* sieve) {
  if (x1 == 0 || x2 == 0) throw InvalidArgument("check_thm2: seeds must be positive");
  if (k % 2 != 0) throw InvalidArgument("check_thm2: k must be even");
  Thm2Report rep;
  rep.x1 = x1;
  rep.x2 = x2;
  rep.k = k;
  rep.twice_X = checked_add(checked_add(checked_mul(3, x1), checked_mul(5, x2)), checked_mul(7, k), "2X");
  rep.X = static_cast<double>(rep.twice_X) / 2.0;
  rep.log2_bound = thm2_log2_bound(rep.X, k);
  rep.parity_applies = std::max(x1, x2) >= 3 || k >= 1;
  rep.base_case = std::max(x1, x2) <= 2 && k == 0;

  OrbitSpec spec{2, k, FunctionKind::phi_sum, {x1, x2}, guards};
  rep.orbit = detect_cycle(spec, sieve);
  rep.sup_seen = rep.orbit.sup_seen;
  if (!rep.orbit.found()) {
    rep.parity_ok = rep.base_case_ok = rep.early_terms_ok = rep.min_x3_x4_ok = false;
    return rep;
  }
  rep.ok = std::log2(static_cast<double>(rep.sup_seen)) <= rep.log2_bound;

  const u64 mu = rep.orbit.preperiod, lam = rep.orbit.period;
  // Covers indices 0..5, one full period past index 4, and the first repeat.
  const u64 len = std::max({mu + lam, std::max<u64>(mu, 4) + lam, u64{6}}) + 1;
  const std::vector<u64> t = trace(spec, len, sieve);

  if (rep.parity_applies) {
    for (u64 i = 4; i < len; ++i) rep.parity_ok = rep.parity_ok && t[i] % 2 == 0;
  }
  if (rep.base_case) {
    for (u64 i = 2; i < len; ++i) rep.base_case_ok = rep.base_case_ok && t[i] == 2;
  } else {
    rep.min_x3_x4_ok = std::min(t[2], t[3]) >= 3;
  }
  rep.early_terms_ok = *std::max_element(t.begin(), t.begin() + 6) <= rep.twice_X;
  return rep;
}

Prop1Report run_prop1_harness(FunctionKind kind, u64 seed_min, u64 seed_max, u64 C, u64 probe_limit,
                              const PhiSieve* sieve) {
  if (C < 2) throw InvalidArgument("prop1: threshold C must be at least 2");
  if (seed_min == 0) throw InvalidArgument("prop1: seeds must be positive");
  Prop1Report rep;
  rep.kind = kind;
  rep.C = C;
  rep.seed_min = seed_min;
  rep.seed_max = seed_max;
  rep.probe_limit = std::max(probe_limit, C);

  OrbitSpec base{1, 0, kind, {1}, {}};
  const Recurrence f(base, sieve);
  for (u64 m = 1; m < C; ++m) {
    const u64 v = f(std::span<const u64>(&m, 1));
    if (v > rep.rhs) {
      rep.rhs = v;
      rep.rhs_argmax = m;
    }
  }
  for (u64 n = C; n <= rep.probe_limit; ++n) {
    if (f(std::span<const u64>(&n, 1)) >= n) {
      rep.precondition_ok = false;
      rep.precondition_counterexample = n;
      break;
    }
  }

  std::map<std::vector<u64>, u64> cycles;
  for (u64 s = seed_min; s <= seed_max; ++s) {
    OrbitSpec spec = base;
    spec.seeds = {s};
    const OrbitResult r = detect_cycle(spec, sieve);
    ++rep.orbits_checked;
    if (!r.found()) {
      ++rep.non_verdicts;
      continue;
    }
    std::vector<u64> c = r.cycle;
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    rep.limsup_max = std::max(rep.limsup_max, *std::max_element(c.begin(), c.end()));
    ++cycles[std::move(c)];
  }
  for (auto& [c, n] : cycles) {
    rep.cycles.push_back(c);
    rep.cycle_seed_counts.push_back(n);
  }
  rep.ok = rep.precondition_ok && rep.non_verdicts == 0 && rep.limsup_max <= rep.rhs;
  return rep;
}

ExploreReport explore_dterm(unsigned d, u64 k, u64 q_min, u64 q_max, const Guards& guards,
                            const PhiSieve* sieve) {
  if (d < 3) throw InvalidArgument("explore_dterm: requires d >= 3");
  if (q_min == 0) throw InvalidArgument("explore_dterm: seeds must be positive");
  ExploreReport rep;
  rep.d = d;
  rep.k = k;
  for (u64 q = q_min; q <= q_max; ++q) {
    ExploreRecord rec;
    rec.q = q;
    OrbitSpec spec{d, k, FunctionKind::phi_sum, std::vector<u64>(d, q), guards};
    rec.orbit = detect_cycle(spec, sieve);
    if (rec.orbit.found()) {
      ++rep.cycles;
      rec.constant = rec.orbit.preperiod == 0 && rec.orbit.period == 1;
    } else {
      ++rep.guard_hits;
      rec.growth = growth_profile(spec, sieve);
    }
    if (rec.constant) {
      ++rep.constant_orbits;
      const u64 f = sieve ? sieve->phi(q) : phi(q);
      const bool composite = q > 3 && f != q - 1;
      rec.lehmer_flag = composite && (q - 1) % f == 0;
      if (rec.lehmer_flag) ++rep.lehmer_flags;
    }
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace phiorbit
