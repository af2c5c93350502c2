#include "phiorbit/campaign.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "phiorbit/bounds.hpp"

namespace phiorbit {

void ScanConfig::validate() const {
  if (d != 1 && d != 2) throw InvalidArgument("scan: d must be 1 or 2");
  if (k_step == 0) throw InvalidArgument("scan: k_step must be positive");
  if (seed_min == 0) throw InvalidArgument("scan: seeds must be positive");
  if (guards.max_steps == 0 || guards.max_value == 0 || guards.max_states == 0) {
    throw InvalidArgument("scan: guards must be positive");
  }
  // item_count must fit in 64 bits
  (void)item_count();
}

u64 ScanConfig::item_count() const {
  if (k_max < k_min || seed_max < seed_min) return 0;
  const u64 nk = (k_max - k_min) / k_step + 1;
  const u64 ns = seed_max - seed_min + 1;
  u64 per_k = ns;
  for (unsigned i = 1; i < d; ++i) per_k = checked_mul(per_k, ns, "scan size");
  return checked_mul(nk, per_k, "scan size");
}

std::pair<u64, std::vector<u64>> ScanConfig::item(u64 index) const {
  const u64 ns = seed_max - seed_min + 1;
  u64 per_k = 1;
  for (unsigned i = 0; i < d; ++i) per_k *= ns;
  const u64 k = k_min + (index / per_k) * k_step;
  u64 rest = index % per_k;
  std::vector<u64> seeds(d);
  for (unsigned i = d; i-- > 0;) {
    seeds[i] = seed_min + rest % ns;
    rest /= ns;
  }
  return {k, seeds};
}

void to_json(json& j, const ScanConfig& v) {
  j = json{{"d", v.d},
           {"k_min", v.k_min},
           {"k_max", v.k_max},
           {"k_step", v.k_step},
           {"seed_min", v.seed_min},
           {"seed_max", v.seed_max},
           {"guards", v.guards}};
}

void from_json(const json& j, ScanConfig& v) {
  v.d = j.at("d").get<unsigned>();
  v.k_min = j.at("k_min").get<u64>();
  v.k_max = j.at("k_max").get<u64>();
  v.k_step = j.at("k_step").get<u64>();
  v.seed_min = j.at("seed_min").get<u64>();
  v.seed_max = j.at("seed_max").get<u64>();
  v.guards = j.at("guards").get<Guards>();
}

std::string config_hash(const ScanConfig& config) {
  const std::string canon = json(config).dump();
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json histogram_to_json(const std::map<u64, u64>& h) {
  json out = json::array();
  for (auto [value, count] : h) out.push_back(json::array({value, count}));
  return out;
}

std::map<u64, u64> histogram_from_json(const json& j) {
  std::map<u64, u64> h;
  for (const auto& e : j) h[e.at(0).get<u64>()] = e.at(1).get<u64>();
  return h;
}

std::string join_seeds(const std::vector<u64>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(seeds[i]);
  }
  return s;
}

}  // namespace

void to_json(json& j, const ScanAggregate& v) {
  j = json{{"records", v.records},
           {"ok", v.ok},
           {"violated", v.violated},
           {"non_verdict", v.non_verdict},
           {"observations", v.observations},
           {"errors", v.errors},
           {"period_histogram", histogram_to_json(v.period_histogram)},
           {"preperiod_histogram", histogram_to_json(v.preperiod_histogram)}};
}

void from_json(const json& j, ScanAggregate& v) {
  v.records = j.at("records").get<u64>();
  v.ok = j.at("ok").get<u64>();
  v.violated = j.at("violated").get<u64>();
  v.non_verdict = j.at("non_verdict").get<u64>();
  v.observations = j.at("observations").get<u64>();
  v.errors = j.at("errors").get<u64>();
  v.period_histogram = histogram_from_json(j.at("period_histogram"));
  v.preperiod_histogram = histogram_from_json(j.at("preperiod_histogram"));
}

void to_json(json& j, const Checkpoint& v) {
  j = json{{"config_hash", v.config_hash}, {"next_item", v.next_item}, {"aggregate", v.aggregate}};
}

void from_json(const json& j, Checkpoint& v) {
  v.config_hash = j.at("config_hash").get<std::string>();
  v.next_item = j.at("next_item").get<u64>();
  v.aggregate = j.at("aggregate").get<ScanAggregate>();
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return std::nullopt;
  try {
    return json::parse(text).get<Checkpoint>();
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed checkpoint '" + path + "': " + e.what());
  }
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint '" + tmp + "'");
    out << json(cp).dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_header() { return "d,k,seeds,preperiod,period,sup_seen,steps_used,terminated,theorem,verdict"; }

ScanItem evaluate_scan_item(const ScanConfig& config, u64 index, const PhiSieve& sieve, ScanFormat format) {
  auto [k, seeds] = config.item(index);
  ScanItem item;
  item.index = index;
  OrbitResult orbit;
  std::string theorem;
  json extra = json::object();
  try {
    if (config.d == 1) {
      theorem = "theorem-1";
      const Thm1Report rep = check_thm1(seeds[0], k, config.guards, &sieve);
      orbit = rep.orbit;
      item.verdict = to_string(rep.verdict());
      extra["bound"] = rep.bound;
      extra["claim_failures"] = rep.claim_failures.size();
    } else if (k % 2 == 0) {
      theorem = "theorem-2";
      const Thm2Report rep = check_thm2(seeds[0], seeds[1], k, config.guards, &sieve);
      orbit = rep.orbit;
      item.verdict = to_string(rep.verdict());
      extra["log2_bound"] = real_to_json(rep.log2_bound);
      extra["parity_ok"] = rep.parity_ok;
    } else {
      theorem = "outside-theorem-2";
      orbit = detect_cycle(OrbitSpec{2, k, FunctionKind::phi_sum, seeds, config.guards}, &sieve);
      item.verdict = orbit.found() ? "observation" : "non-verdict";
    }
  } catch (const Error& e) {
    item.verdict = "error";
    extra["error"] = e.what();
  }
  item.period = orbit.period;
  item.preperiod = orbit.preperiod;

  if (format == ScanFormat::csv) {
    std::ostringstream os;
    os << config.d << ',' << k << ',' << join_seeds(seeds) << ',' << orbit.preperiod << ',' << orbit.period << ','
       << orbit.sup_seen << ',' << orbit.steps_used << ',' << to_string(orbit.terminated) << ',' << theorem << ','
       << item.verdict;
    item.line = os.str();
  } else {
    json outputs = orbit;
    outputs["theorem"] = theorem;
    outputs["verdict"] = item.verdict;
    outputs.update(extra);
    item.line = make_record("scan-orbit", json{{"d", config.d}, {"k", k}, {"seeds", seeds}}, outputs).dump();
  }
  return item;
}

json summary_record(const ScanConfig& config, const ScanAggregate& aggregate) {
  return make_record("scan-summary", config, aggregate);
}

ScanOutcome scan_campaign(const ScanConfig& config, const PhiSieve& sieve, const ScanOptions& options,
                          const std::function<void(const std::string&)>& sink) {
  config.validate();
  const std::string hash = config_hash(config);
  ScanOutcome out;
  if (!options.checkpoint_path.empty()) {
    if (auto cp = load_checkpoint(options.checkpoint_path)) {
      if (cp->config_hash != hash) {
        throw CheckpointMismatch("checkpoint was written for configuration " + cp->config_hash +
                                 ", current configuration is " + hash);
      }
      out.first_item = cp->next_item;
      out.aggregate = cp->aggregate;
    }
  }
  const u64 total = config.item_count();
  if (out.first_item > total) throw InvalidArgument("checkpoint position beyond the end of the scan");
  u64 end = total;
  if (options.stop_after != 0) end = std::min(total, out.first_item + options.stop_after);

  if (out.first_item == 0 && options.format == ScanFormat::csv) sink(csv_header());

  const unsigned workers = std::max(1u, options.workers);
  const u64 batch = std::max<u64>(1, options.batch_per_worker) * workers;
  std::vector<ScanItem> results;
  u64 pos = out.first_item;
  while (pos < end) {
    const u64 n = std::min(batch, end - pos);
    results.assign(n, ScanItem{});
    auto work = [&](unsigned w) {
      for (u64 i = w; i < n; i += workers) results[i] = evaluate_scan_item(config, pos + i, sieve, options.format);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const ScanItem& item : results) {
      sink(item.line);
      ScanAggregate& a = out.aggregate;
      ++a.records;
      if (item.verdict == "ok") ++a.ok;
      else if (item.verdict == "violated") ++a.violated;
      else if (item.verdict == "non-verdict") ++a.non_verdict;
      else if (item.verdict == "observation") ++a.observations;
      else ++a.errors;
      if (item.period != 0) {
        ++a.period_histogram[item.period];
        ++a.preperiod_histogram[item.preperiod];
      }
    }
    pos += n;
    if (!options.checkpoint_path.empty()) save_checkpoint(options.checkpoint_path, {hash, pos, out.aggregate});
  }
  out.next_item = pos;
  out.completed = pos == total;
  if (out.completed && total > 0 && (pos > out.first_item || out.first_item == 0) &&
      options.format == ScanFormat::json_lines) {
    sink(summary_record(config, out.aggregate).dump());
  }
  return out;
}

}  // namespace phiorbit
