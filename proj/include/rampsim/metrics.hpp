// Run metrics: sampled table sizes, per-retrieval lookup accounting,
// retrieval delays, and per-router Interest counters, plus the CSV writers.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "rampsim/packets.hpp"

namespace ramp {

enum class TableKind : std::uint8_t { Prt, Fab, Lsat, Fib, Pit, kCount };
inline constexpr std::size_t kTableKinds = static_cast<std::size_t>(TableKind::kCount);
const char* to_string(TableKind k);

enum class DropReason : std::uint8_t {
  LinkDown,
  NoLsatEntry,
  NoPitEntry,
  DuplicateNonce,
  NoFibRoute,
  NoWaitingConsumer,
  kCount
};
const char* to_string(DropReason r);

// Collects everything a single run reports. Lookup counts are attributed to
// the retrieval (request) the packet belongs to, so in-flight work at the
// horizon does not dilute per-retrieval averages.
class Metrics {
public:
  void reset(std::size_t router_count, double warmup_end);

  // -- data plane hooks --------------------------------------------------
  void count_lookup(std::uint32_t router_idx, TableKind kind, Tag tag);
  void count_interest_forwarded(std::uint32_t router_idx);
  // One Interest hop attributed to the retrieval (path-length accounting).
  void count_interest_hop(Tag tag);
  void count_drop(DropReason r);
  void count_loop_error_emitted();

  // Ties a retransmission's tag to the request's first tag so its lookups
  // are attributed to the same retrieval.
  void alias_tag(Tag newer, Tag first);

  // -- retrieval accounting ------------------------------------------------
  void retrieval_completed(Tag first_tag, double delay_s);
  void retrieval_failed(Tag first_tag);

  // -- sampling ------------------------------------------------------------
  void sample_table(std::uint32_t router_idx, TableKind kind, double now, std::size_t entries);

  // -- results -------------------------------------------------------------
  double mean_table_size(std::uint32_t router_idx, TableKind kind) const;
  double mean_table_size(TableKind kind) const;  // over routers with samples
  std::uint64_t completed() const { return completed_; }
  std::uint64_t failed() const { return failed_; }
  double mean_delay_s() const { return completed_ ? delay_sum_ / completed_ : 0.0; }
  double mean_hops() const { return completed_ ? static_cast<double>(hop_sum_) / completed_ : 0.0; }
  double lookups_per_retrieval(TableKind kind) const;
  std::uint64_t total_lookups(TableKind kind) const {
    return completed_lookups_[static_cast<std::size_t>(kind)];
  }
  const std::vector<std::uint64_t>& interests_forwarded() const { return interests_forwarded_; }
  double mean_interests_forwarded() const;
  std::uint64_t drops(DropReason r) const { return drops_[static_cast<std::size_t>(r)]; }
  std::uint64_t loop_errors_emitted() const { return loop_errors_; }

private:
  using LookupArr = std::array<std::uint32_t, kTableKinds>;
  struct TableSeries {
    double sum = 0;
    std::uint64_t samples = 0;
  };

  double warmup_end_ = 0;
  std::vector<std::array<TableSeries, kTableKinds>> table_series_;
  std::unordered_map<Tag, LookupArr> pending_lookups_;
  std::unordered_map<Tag, Tag> tag_alias_;
  std::unordered_map<Tag, std::uint32_t> pending_hops_;
  std::array<std::uint64_t, kTableKinds> completed_lookups_{};
  std::vector<std::uint64_t> interests_forwarded_;
  std::array<std::uint64_t, static_cast<std::size_t>(DropReason::kCount)> drops_{};
  std::uint64_t loop_errors_ = 0;
  std::uint64_t completed_ = 0;
  std::uint64_t failed_ = 0;
  double delay_sum_ = 0;
  std::uint64_t hop_sum_ = 0;

  Tag resolve(Tag t) const;
};

// Flattened per-run results, ready for CSV output.
struct RunMetrics {
  std::string mode;  // "ramp" or "ndn"
  double rate = 0;
  std::uint64_t seed = 0;
  std::vector<RouterId> router_ids;

  struct TableRow {
    TableKind kind;
    std::vector<double> per_router_mean;  // by router position
    double mean = 0;
  };
  std::vector<TableRow> tables;

  struct LookupRow {
    TableKind kind;
    std::uint64_t total = 0;
    double per_retrieval = 0;
  };
  std::vector<LookupRow> lookups;

  std::uint64_t completed = 0;
  std::uint64_t failed = 0;
  double mean_delay_s = 0;
  double mean_hops = 0;
  std::vector<std::uint64_t> interests_forwarded;
  double mean_interests_forwarded = 0;
  std::uint64_t loop_errors = 0;

  double table_mean(TableKind k) const;
  double lookup_rate(TableKind k) const;
};

// CSV writers. Schemas are documented in the README; rewriting with the
// same runs produces byte-identical files.
void write_table_sizes_csv(std::ostream& out, const std::vector<RunMetrics>& runs);
void write_lookups_csv(std::ostream& out, const std::vector<RunMetrics>& runs);
void write_delays_csv(std::ostream& out, const std::vector<RunMetrics>& runs);
void write_interests_csv(std::ostream& out, const std::vector<RunMetrics>& runs);
std::string format_double(double v);

}  // namespace ramp
