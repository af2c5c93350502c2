#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phiorbit/orbit.hpp"
#include "phiorbit/records.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit {

// A family of orbits: every k in k_min, k_min + k_step, ..., <= k_max and
// every seed tuple in [seed_min, seed_max]^d (d = 1 or 2), enumerated with
// k outermost and the first seed next.
struct ScanConfig {
  unsigned d = 1;
  u64 k_min = 0;
  u64 k_max = 0;
  u64 k_step = 1;
  u64 seed_min = 1;
  u64 seed_max = 0;  // below seed_min means an empty range
  Guards guards;

  void validate() const;
  u64 item_count() const;
  // k and seeds of item `index`.
  std::pair<u64, std::vector<u64>> item(u64 index) const;
};

void to_json(json& j, const ScanConfig& v);
void from_json(const json& j, ScanConfig& v);

// FNV-1a over the canonical JSON of the configuration, as 16 hex digits.
std::string config_hash(const ScanConfig& config);

enum class ScanFormat { json_lines, csv };

struct ScanAggregate {
  u64 records = 0;
  u64 ok = 0;
  u64 violated = 0;
  u64 non_verdict = 0;
  u64 observations = 0;  // d = 2 with odd k: outside the theorem
  u64 errors = 0;
  std::map<u64, u64> period_histogram;
  std::map<u64, u64> preperiod_histogram;

  friend bool operator==(const ScanAggregate&, const ScanAggregate&) = default;
};

void to_json(json& j, const ScanAggregate& v);
void from_json(const json& j, ScanAggregate& v);

struct Checkpoint {
  std::string config_hash;
  u64 next_item = 0;
  ScanAggregate aggregate;
};

void to_json(json& j, const Checkpoint& v);
void from_json(const json& j, Checkpoint& v);

// Reads a checkpoint file; a missing or empty file yields nullopt.
std::optional<Checkpoint> load_checkpoint(const std::string& path);
void save_checkpoint(const std::string& path, const Checkpoint& cp);

// Evaluated orbit plus its theorem verdict, as one output record.
struct ScanItem {
  u64 index = 0;
  std::string line;  // serialized record without trailing newline
  u64 period = 0;
  u64 preperiod = 0;
  std::string verdict;  // ok | violated | non-verdict | observation | error
};

ScanItem evaluate_scan_item(const ScanConfig& config, u64 index, const PhiSieve& sieve, ScanFormat format);

std::string csv_header();
json summary_record(const ScanConfig& config, const ScanAggregate& aggregate);

struct ScanOptions {
  unsigned workers = 1;
  ScanFormat format = ScanFormat::json_lines;
  std::string checkpoint_path;  // empty: no checkpointing
  u64 stop_after = 0;           // items to process in this run; 0 means all
  u64 batch_per_worker = 256;
};

struct ScanOutcome {
  u64 first_item = 0;
  u64 next_item = 0;
  bool completed = false;
  ScanAggregate aggregate;
};

// Thrown when a checkpoint belongs to a different configuration.
class CheckpointMismatch : public Error {
 public:
  using Error::Error;
};

// Evaluates the campaign in batches of workers * batch_per_worker items;
// each batch is computed in parallel and emitted in item order, followed by
// a checkpoint write. The summary record (json-lines only) is written once
// the last item is done. Resuming from a checkpoint emits exactly the lines
// an uninterrupted run would have emitted after it.
ScanOutcome scan_campaign(const ScanConfig& config, const PhiSieve& sieve, const ScanOptions& options,
                          const std::function<void(const std::string&)>& sink);

}  // namespace phiorbit
