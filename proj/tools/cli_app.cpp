#include "cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "phiorbit/bounds.hpp"
#include "phiorbit/campaign.hpp"
#include "phiorbit/mertens.hpp"
#include "phiorbit/orbit.hpp"
#include "phiorbit/records.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit::cli {

namespace {

struct GuardOptions {
  u64 max_steps = Guards{}.max_steps;
  u64 max_value = Guards{}.max_value;
  u64 max_states = Guards{}.max_states;

  Guards get() const { return {max_steps, max_value, max_states}; }
};

void add_guard_options(CLI::App* cmd, GuardOptions& g) {
  cmd->add_option("--max-steps", g.max_steps, "Step guard")->capture_default_str();
  cmd->add_option("--max-value", g.max_value, "Value guard")->capture_default_str();
  cmd->add_option("--max-states", g.max_states, "History cap of the naive detector")->capture_default_str();
}

struct Options {
  // global
  unsigned workers = 1;
  u64 sieve_limit = u64{1} << 22;
  u64 sieve_cap = kDefaultSieveCap;
  u64 rho_seed = kDefaultRhoSeed;
  std::string output = "json-lines";
  std::string out_path;

  GuardOptions guards;

  // orbit / explore
  unsigned d = 1;
  u64 k = 0;
  std::string kind = "phi-sum";
  std::string prop1_kind = "digit-square-sum";
  std::vector<u64> seeds;
  std::string detector = "brent";

  // chain / thm1 / thm2
  u64 x1 = 1;
  u64 x2 = 1;

  // scan
  u64 k_min = 0, k_max = 0, k_step = 1;
  u64 seed_min = 1, seed_max = 0;
  std::string checkpoint;
  u64 stop_after = 0;
  u64 batch = 256;

  // prop1
  u64 C = 100;
  u64 probe_limit = 1'000'000;

  // mertens / corollary / chebyshev / avg-phi / lehmer / factor
  u64 x = 2;
  u64 n = 2;
  u64 limit = 2;

  // crt-witness
  u64 X = 6;
  u64 max_prime = kDefaultMaxPrime;
  bool verify_drop = false;
  u64 trial_cap = 1'000'000;
  std::size_t max_digits = 100'000;

  // explore
  u64 q_min = 1, q_max = 1;
};

class Emitter {
 public:
  Emitter(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
    }
    os_ = file_ ? file_.get() : &fallback;
  }
  void line(const std::string& s) { *os_ << s << '\n'; }
  void record(const json& j) { line(j.dump()); }
  void flush() { os_->flush(); }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::ok: return kOk;
    case Verdict::violated: return kInternalError;
    case Verdict::non_verdict: return kGuardNonVerdict;
  }
  return kInternalError;
}

std::unique_ptr<PhiSieve> make_sieve(const Options& o, u64 at_least = 0) {
  return std::make_unique<PhiSieve>(std::max(o.sieve_limit, at_least), o.sieve_cap);
}

int run_command(const std::string& name, const Options& o, Emitter& em, std::ostream& err) {
  if (o.output != "json-lines" && name != "scan") {
    throw InvalidArgument("--output csv is only available for scan");
  }

  if (name == "orbit") {
    OrbitSpec spec{o.d, o.k, parse_function_kind(o.kind), o.seeds, o.guards.get()};
    spec.validate();
    auto sieve = make_sieve(o);
    OrbitResult r;
    if (o.detector == "brent") {
      r = detect_cycle(spec, sieve.get());
    } else if (o.detector == "naive") {
      r = detect_cycle_naive(spec, sieve.get());
    } else {
      throw InvalidArgument("unknown detector '" + o.detector + "'");
    }
    json in = spec;
    in["detector"] = o.detector;
    em.record(make_record("orbit", in, r));
    return r.found() ? kOk : kGuardNonVerdict;
  }

  if (name == "chain") {
    auto sieve = make_sieve(o);
    const PhiChain c = phi_chain(o.x1, sieve.get());
    const PillaiBounds b = pillai_bounds(o.x1);
    json outj = c;
    outj["pillai_bounds"] = b;
    outj["bounds_ok"] = b.lower <= c.pillai_n && c.pillai_n <= b.upper;
    em.record(make_record("chain", json{{"x1", o.x1}}, outj));
    return outj["bounds_ok"].get<bool>() ? kOk : kInternalError;
  }

  if (name == "factor") {
    const FactoredInteger f = factor(o.n, o.rho_seed);
    json outj = f;
    outj["phi"] = phi(f);
    em.record(make_record("factor", json{{"n", o.n}}, outj));
    return kOk;
  }

  if (name == "avg-phi") {
    auto sieve = make_sieve(o, o.n);
    em.record(make_record("avg-phi", json{{"n", o.n}}, avg_phi_check(o.n, *sieve)));
    return kOk;
  }

  if (name == "lehmer") {
    auto sieve = make_sieve(o, o.limit);
    const auto hits = lehmer_scan(o.limit, *sieve);
    em.record(make_record("lehmer", json{{"limit", o.limit}}, json{{"hits", hits}, {"count", hits.size()}}));
    return kOk;
  }

  if (name == "thm1") {
    auto sieve = make_sieve(o);
    const Thm1Report rep = check_thm1(o.x1, o.k, o.guards.get(), sieve.get());
    em.record(make_record("thm1", json{{"x1", o.x1}, {"k", o.k}, {"guards", o.guards.get()}}, rep));
    return verdict_code(rep.verdict());
  }

  if (name == "thm2") {
    auto sieve = make_sieve(o);
    const Thm2Report rep = check_thm2(o.x1, o.x2, o.k, o.guards.get(), sieve.get());
    em.record(
        make_record("thm2", json{{"x1", o.x1}, {"x2", o.x2}, {"k", o.k}, {"guards", o.guards.get()}}, rep));
    if (rep.verdict() == Verdict::non_verdict) {
      err << "thm2: orbit stopped on a guard; this would be a counterexample candidate\n";
    }
    return verdict_code(rep.verdict());
  }

  if (name == "prop1") {
    auto sieve = make_sieve(o);
    const Prop1Report rep =
        run_prop1_harness(parse_function_kind(o.prop1_kind), o.seed_min, o.seed_max, o.C, o.probe_limit, sieve.get());
    em.record(make_record("prop1",
                          json{{"kind", o.prop1_kind}, {"seed_min", o.seed_min}, {"seed_max", o.seed_max}, {"C", o.C}},
                          rep));
    if (rep.non_verdicts > 0) return kGuardNonVerdict;
    return rep.ok ? kOk : kInternalError;
  }

  if (name == "mertens") {
    const MertensEnvelope env = mertens_product(o.x);
    em.record(make_record("mertens", json{{"x", o.x}}, env));
    return env.ok() ? kOk : kInternalError;
  }

  if (name == "corollary") {
    const CorollaryCheck c = check_corollary(o.x);
    em.record(make_record("corollary", json{{"x", o.x}}, c));
    return c.ok ? kOk : kInternalError;
  }

  if (name == "chebyshev") {
    const ChebyshevCheck c = chebyshev_check(o.x);
    em.record(make_record("chebyshev", json{{"x", o.x}}, c));
    return c.ok ? kOk : kInternalError;
  }

  if (name == "crt-witness") {
    const CrtWitness w = build_crt_witness(o.X, o.k, o.max_prime);
    const WitnessVerification v = verify_crt_witness(w);
    json outj{{"witness", phiorbit::witness_json(w, o.max_digits)}, {"verification", v}};
    bool drop_ok = true;
    if (o.verify_drop) {
      const PhiDropOutcome d = verify_phi_drop(w, o.trial_cap);
      outj["phi_drop"] = d;
      drop_ok = d.status != DropStatus::violated;
    }
    em.record(make_record("crt-witness", json{{"X", o.X}, {"k", o.k}, {"max_prime", o.max_prime}}, outj));
    return v.ok() && drop_ok ? kOk : kInternalError;
  }

  if (name == "explore") {
    auto sieve = make_sieve(o);
    const ExploreReport rep = explore_dterm(o.d, o.k, o.q_min, o.q_max, o.guards.get(), sieve.get());
    em.record(make_record("explore",
                          json{{"d", o.d}, {"k", o.k}, {"q_min", o.q_min}, {"q_max", o.q_max},
                               {"guards", o.guards.get()}},
                          rep));
    return rep.guard_hits > 0 ? kGuardNonVerdict : kOk;
  }

  if (name == "scan") {
    ScanConfig cfg{o.d, o.k_min, o.k_max, o.k_step, o.seed_min, o.seed_max, o.guards.get()};
    ScanOptions so;
    so.workers = std::max(1u, o.workers);
    so.checkpoint_path = o.checkpoint;
    so.stop_after = o.stop_after;
    so.batch_per_worker = o.batch;
    if (o.output == "csv") {
      so.format = ScanFormat::csv;
    } else if (o.output != "json-lines") {
      throw InvalidArgument("unknown output format '" + o.output + "'");
    }
    auto sieve = make_sieve(o);
    const ScanOutcome res = scan_campaign(cfg, *sieve, so, [&](const std::string& s) { em.line(s); });
    const ScanAggregate& a = res.aggregate;
    if (a.violated > 0 || a.errors > 0) return kInternalError;
    if (a.non_verdict > 0) return kGuardNonVerdict;
    return kOk;
  }

  throw InvalidArgument("unknown command '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"phiorbit: shifted totient recurrences, their cycles and the inequalities behind them"};
  app.set_config("--config", "", "TOML or INI file with option values; flags given on the command line win");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", o.workers, "Worker threads for scans")->envname("PHIORBIT_WORKERS")->capture_default_str();
  app.add_option("--sieve-limit", o.sieve_limit, "Size of the shared phi table")->capture_default_str();
  app.add_option("--sieve-cap", o.sieve_cap, "Maximum phi table size")
      ->envname("PHIORBIT_SIEVE_CAP")
      ->capture_default_str();
  app.add_option("--seed", o.rho_seed, "Seed for randomized subroutines (Pollard rho)")->capture_default_str();
  app.add_option("--output", o.output, "json-lines or csv (csv: scan only)")->capture_default_str();
  app.add_option("--out", o.out_path, "Write records to this file instead of standard output");

  auto* orbit = app.add_subcommand("orbit", "Run one recurrence to a cycle or a guard");
  orbit->add_option("--d", o.d, "Arity")->capture_default_str();
  orbit->add_option("--k", o.k, "Shift")->capture_default_str();
  orbit->add_option("--kind", o.kind, "phi-sum, digit-square-sum or max-plus-c")->capture_default_str();
  orbit->add_option("--seeds", o.seeds, "Comma separated starting values")->delimiter(',')->required();
  orbit->add_option("--detector", o.detector, "brent or naive")->capture_default_str();
  add_guard_options(orbit, o.guards);

  auto* chain = app.add_subcommand("chain", "Pure phi iteration down to 1, with Pillai's bounds");
  chain->add_option("--x1", o.x1)->required();

  auto* fac = app.add_subcommand("factor", "Factor a 64-bit integer");
  fac->add_option("--n", o.n)->required();

  auto* avg = app.add_subcommand("avg-phi", "Exact mean of phi(1..n) next to 3n/pi^2");
  avg->add_option("--n", o.n)->required();

  auto* lehmer = app.add_subcommand("lehmer", "Composite q <= limit with phi(q) | q - 1");
  lehmer->add_option("--limit", o.limit)->required();

  auto* thm1 = app.add_subcommand("thm1", "Check sup x_n <= max{x1, k^4} + (k+1)^2 and the drop claim");
  thm1->add_option("--x1", o.x1)->required();
  thm1->add_option("--k", o.k)->required();
  add_guard_options(thm1, o.guards);

  auto* thm2 = app.add_subcommand("thm2", "Check the two-term bound and parity (even k)");
  thm2->add_option("--x1", o.x1)->required();
  thm2->add_option("--x2", o.x2)->required();
  thm2->add_option("--k", o.k)->required();
  add_guard_options(thm2, o.guards);

  auto* prop1 = app.add_subcommand("prop1", "Limsup harness for functions with f(n) < n beyond C");
  prop1->add_option("--kind", o.prop1_kind)->capture_default_str();
  prop1->add_option("--seed-min", o.seed_min)->capture_default_str();
  prop1->add_option("--seed-max", o.seed_max)->required();
  prop1->add_option("--C", o.C)->capture_default_str();
  prop1->add_option("--probe-limit", o.probe_limit)->capture_default_str();

  auto* mertens = app.add_subcommand("mertens", "Exact prod_{p<=x}(1-1/p) against the explicit envelope");
  mertens->add_option("--x", o.x)->required();

  auto* corollary = app.add_subcommand("corollary", "Exact prod_{x<p<=x^3}(1-1/p) < 1/2");
  corollary->add_option("--x", o.x)->required();

  auto* cheb = app.add_subcommand("chebyshev", "prod_{p<=x} p < 4^x");
  cheb->add_option("--x", o.x)->required();

  auto* crt = app.add_subcommand("crt-witness", "Build and re-verify the block/CRT witness");
  crt->add_option("--X", o.X)->required();
  crt->add_option("--k", o.k)->required();
  crt->add_option("--max-prime", o.max_prime)->capture_default_str();
  crt->add_flag("--verify-drop", o.verify_drop, "Also check phi(2y - 2j) < y - k");
  crt->add_option("--trial-cap", o.trial_cap)->capture_default_str();
  crt->add_option("--max-digits", o.max_digits, "Summarize integers longer than this")->capture_default_str();

  auto* explore = app.add_subcommand("explore", "d >= 3 phi-sum orbits from constant seeds");
  explore->add_option("--d", o.d)->required();
  explore->add_option("--k", o.k)->capture_default_str();
  explore->add_option("--q-min", o.q_min)->required();
  explore->add_option("--q-max", o.q_max)->required();
  add_guard_options(explore, o.guards);

  auto* scan = app.add_subcommand("scan", "Sweep seeds and shifts for d = 1 or 2");
  scan->add_option("--d", o.d)->capture_default_str();
  scan->add_option("--k-min", o.k_min)->capture_default_str();
  scan->add_option("--k-max", o.k_max)->capture_default_str();
  scan->add_option("--k-step", o.k_step)->capture_default_str();
  scan->add_option("--seed-min", o.seed_min)->capture_default_str();
  scan->add_option("--seed-max", o.seed_max)->required();
  scan->add_option("--checkpoint", o.checkpoint, "Checkpoint file (resumes when present)");
  scan->add_option("--stop-after", o.stop_after, "Process at most this many items, then checkpoint");
  scan->add_option("--batch", o.batch, "Items per worker per batch")->capture_default_str();
  add_guard_options(scan, o.guards);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Emitter em(o.out_path, out);
    const int code = run_command(name, o, em, err);
    em.flush();
    return code;
  } catch (const CheckpointMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kCheckpointMismatch;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceExhausted& e) {
    err << "resource limit: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace phiorbit::cli
