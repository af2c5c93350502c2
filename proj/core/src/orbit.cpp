#include "phiorbit/orbit.hpp"

#include <algorithm>
#include <unordered_map>

namespace phiorbit {

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::phi_sum: return "phi-sum";
    case FunctionKind::digit_square_sum: return "digit-square-sum";
    case FunctionKind::max_plus_c: return "max-plus-c";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::cycle_found: return "cycle-found";
    case Termination::guard_max_steps: return "guard-max-steps";
    case Termination::guard_max_value: return "guard-max-value";
    case Termination::guard_max_memory: return "guard-max-memory";
  }
  return "?";
}

FunctionKind parse_function_kind(std::string_view s) {
  for (auto k : {FunctionKind::phi_sum, FunctionKind::digit_square_sum, FunctionKind::max_plus_c}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown function kind '" + std::string(s) + "'");
}

Termination parse_termination(std::string_view s) {
  for (auto t : {Termination::cycle_found, Termination::guard_max_steps, Termination::guard_max_value,
                 Termination::guard_max_memory}) {
    if (to_string(t) == s) return t;
  }
  throw InvalidArgument("unknown termination '" + std::string(s) + "'");
}

void OrbitSpec::validate() const {
  if (d == 0) throw InvalidArgument("orbit: arity d must be positive");
  if (seeds.size() != d) {
    throw InvalidArgument("orbit: expected " + std::to_string(d) + " seeds, got " +
                          std::to_string(seeds.size()));
  }
  for (u64 s : seeds) {
    if (s == 0) throw InvalidArgument("orbit: seeds must be positive");
  }
  if (guards.max_steps == 0 || guards.max_value == 0 || guards.max_states == 0) {
    throw InvalidArgument("orbit: guards must be positive");
  }
}

u64 digit_square_sum(u64 n) {
  u64 s = 0;
  for (; n; n /= 10) s += (n % 10) * (n % 10);
  return s;
}

Recurrence::Recurrence(const OrbitSpec& spec, const PhiSieve* sieve) : spec_(spec), sieve_(sieve) {}

u64 Recurrence::term(u64 x) const {
  switch (spec_.kind) {
    case FunctionKind::phi_sum: return sieve_ ? sieve_->phi(x) : phi(x);
    case FunctionKind::digit_square_sum: return digit_square_sum(x);
    case FunctionKind::max_plus_c: return x;
  }
  return 0;
}

u64 Recurrence::operator()(std::span<const u64> window) const {
  if (window.size() != spec_.d) throw InvalidArgument("step: window length differs from d");
  u64 acc = 0;
  if (spec_.kind == FunctionKind::max_plus_c) {
    acc = *std::max_element(window.begin(), window.end());
  } else {
    for (u64 x : window) acc = checked_add(acc, term(x), "orbit term");
  }
  return checked_add(acc, spec_.k, "orbit term");
}

u64 step(std::span<const u64> window, const OrbitSpec& spec, const PhiSieve* sieve) {
  return Recurrence(spec, sieve)(window);
}

namespace {

// Ring buffer over the last d terms. Every supported f is symmetric in its
// arguments, so f can be applied to the raw buffer without reordering.
class Window {
 public:
  explicit Window(std::span<const u64> seeds) : buf_(seeds.begin(), seeds.end()) {}

  void push(u64 x) {
    buf_[head_] = x;
    if (++head_ == buf_.size()) head_ = 0;
  }

  std::span<const u64> raw() const { return buf_; }

  friend bool operator==(const Window& a, const Window& b) {
    const std::size_t d = a.buf_.size();
    std::size_t i = a.head_, j = b.head_;
    for (std::size_t n = 0; n < d; ++n) {
      if (a.buf_[i] != b.buf_[j]) return false;
      if (++i == d) i = 0;
      if (++j == d) j = 0;
    }
    return true;
  }

  std::vector<u64> ordered() const {
    std::vector<u64> out;
    out.reserve(buf_.size());
    for (std::size_t n = 0; n < buf_.size(); ++n) out.push_back(buf_[(head_ + n) % buf_.size()]);
    return out;
  }

 private:
  std::vector<u64> buf_;
  std::size_t head_ = 0;
};

OrbitResult guard_result(Termination t, u64 sup, u64 evals) {
  OrbitResult r;
  r.terminated = t;
  r.sup_seen = sup;
  r.steps_used = evals;
  return r;
}

// Fills cycle and sup_seen from a known (preperiod, period).
void finish_cycle(OrbitResult& r, const OrbitSpec& spec, const Recurrence& f) {
  const u64 d = spec.d;
  std::vector<u64> terms(spec.seeds.begin(), spec.seeds.end());
  const u64 needed = r.preperiod + r.period + d - 1;
  Window w(spec.seeds);
  while (terms.size() < needed) {
    const u64 x = f(w.raw());
    w.push(x);
    terms.push_back(x);
  }
  r.sup_seen = *std::max_element(terms.begin(), terms.end());
  r.cycle.assign(terms.begin() + static_cast<std::ptrdiff_t>(r.preperiod),
                 terms.begin() + static_cast<std::ptrdiff_t>(r.preperiod + r.period));
  r.steps_used = r.preperiod + r.period;
  r.terminated = Termination::cycle_found;
}

struct VectorHash {
  std::size_t operator()(const std::vector<u64>& v) const {
    u64 h = 0xcbf29ce484222325ULL;
    for (u64 x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

OrbitResult detect_cycle(const OrbitSpec& spec, const PhiSieve* sieve) {
  spec.validate();
  const Recurrence f(spec, sieve);
  const Guards& g = spec.guards;

  u64 sup = *std::max_element(spec.seeds.begin(), spec.seeds.end());
  u64 evals = 0;
  Window tortoise(spec.seeds);
  Window hare(spec.seeds);

  // Phase 1: Brent's power-of-two search yields the minimal period.
  u64 power = 1, period = 0;
  do {
    if (power == period) {
      tortoise = hare;
      power <<= 1;
      period = 0;
    }
    if (evals >= g.max_steps) return guard_result(Termination::guard_max_steps, sup, evals);
    const u64 x = f(hare.raw());
    ++evals;
    sup = std::max(sup, x);
    if (x > g.max_value) return guard_result(Termination::guard_max_value, sup, evals);
    hare.push(x);
    ++period;
  } while (!(tortoise == hare));

  // Phase 2: two pointers `period` apart meet first at the preperiod.
  Window lead(spec.seeds);
  Window trail(spec.seeds);
  for (u64 i = 0; i < period; ++i) lead.push(f(lead.raw()));
  u64 preperiod = 0;
  while (!(lead == trail)) {
    lead.push(f(lead.raw()));
    trail.push(f(trail.raw()));
    ++preperiod;
  }

  OrbitResult r;
  r.preperiod = preperiod;
  r.period = period;
  finish_cycle(r, spec, f);
  return r;
}

OrbitResult detect_cycle_naive(const OrbitSpec& spec, const PhiSieve* sieve) {
  spec.validate();
  const Recurrence f(spec, sieve);
  const Guards& g = spec.guards;

  std::unordered_map<std::vector<u64>, u64, VectorHash> seen;
  u64 sup = *std::max_element(spec.seeds.begin(), spec.seeds.end());
  u64 evals = 0;
  Window w(spec.seeds);
  for (u64 index = 0;; ++index) {
    auto [it, inserted] = seen.try_emplace(w.ordered(), index);
    if (!inserted) {
      OrbitResult r;
      r.preperiod = it->second;
      r.period = index - it->second;
      finish_cycle(r, spec, f);
      return r;
    }
    if (seen.size() >= g.max_states) return guard_result(Termination::guard_max_memory, sup, evals);
    if (evals >= g.max_steps) return guard_result(Termination::guard_max_steps, sup, evals);
    const u64 x = f(w.raw());
    ++evals;
    sup = std::max(sup, x);
    if (x > g.max_value) return guard_result(Termination::guard_max_value, sup, evals);
    w.push(x);
  }
}

std::vector<u64> trace(const OrbitSpec& spec, u64 count, const PhiSieve* sieve) {
  spec.validate();
  const Recurrence f(spec, sieve);
  std::vector<u64> terms(spec.seeds.begin(), spec.seeds.end());
  if (count <= terms.size()) {
    terms.resize(count);
    return terms;
  }
  terms.reserve(count);
  Window w(spec.seeds);
  while (terms.size() < count) {
    const u64 x = f(w.raw());
    w.push(x);
    terms.push_back(x);
  }
  return terms;
}

u64 periodic_term(std::span<const u64> prefix, u64 preperiod, u64 period, u64 index) {
  if (index < prefix.size()) return prefix[index];
  if (period == 0 || preperiod + period > prefix.size()) {
    throw InvalidArgument("periodic_term: prefix does not cover one full period");
  }
  return prefix[preperiod + (index - preperiod) % period];
}

}  // namespace phiorbit

namespace phiorbit {

std::vector<GrowthSample> growth_profile(const OrbitSpec& spec, const PhiSieve* sieve) {
  spec.validate();
  const Recurrence f(spec, sieve);
  std::vector<GrowthSample> out;
  Window w(spec.seeds);
  u64 next_sample = 1;
  GrowthSample last{};
  for (u64 s = 1; s <= spec.guards.max_steps; ++s) {
    u64 x;
    try {
      x = f(w.raw());
    } catch (const OverflowError&) {
      break;
    }
    w.push(x);
    last = {s, x};
    if (s == next_sample) {
      out.push_back(last);
      next_sample <<= 1;
    }
    if (x > spec.guards.max_value) break;
  }
  if (last.step != 0 && (out.empty() || out.back().step != last.step)) out.push_back(last);
  return out;
}

}  // namespace phiorbit
