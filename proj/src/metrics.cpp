#include "rampsim/metrics.hpp"

#include <cstdio>
#include <ostream>

namespace ramp {

const char* to_string(TableKind k) {
  switch (k) {
    case TableKind::Prt: return "prt";
    case TableKind::Fab: return "fab";
    case TableKind::Lsat: return "lsat";
    case TableKind::Fib: return "fib";
    case TableKind::Pit: return "pit";
    default: return "?";
  }
}

const char* to_string(DropReason r) {
  switch (r) {
    case DropReason::LinkDown: return "link-down";
    case DropReason::NoLsatEntry: return "no-lsat-entry";
    case DropReason::NoPitEntry: return "no-pit-entry";
    case DropReason::DuplicateNonce: return "duplicate-nonce";
    case DropReason::NoFibRoute: return "no-fib-route";
    case DropReason::NoWaitingConsumer: return "no-waiting-consumer";
    default: return "?";
  }
}

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Loop: return "loop";
    case ErrorCode::NoRoute: return "no-route";
    case ErrorCode::NoContent: return "no-content";
    case ErrorCode::LinkFailure: return "link-failure";
    default: return "?";
  }
}

std::uint32_t wire_bytes(const Message& m) {
  if (std::holds_alternative<DataPacket>(m) || std::holds_alternative<NdnData>(m))
    return kDataBytes;
  if (std::holds_alternative<ErrorMessage>(m)) return kErrorBytes;
  return kInterestBytes;
}

void Metrics::reset(std::size_t router_count, double warmup_end) {
  warmup_end_ = warmup_end;
  table_series_.assign(router_count, {});
  pending_lookups_.clear();
  tag_alias_.clear();
  pending_hops_.clear();
  completed_lookups_ = {};
  interests_forwarded_.assign(router_count, 0);
  drops_ = {};
  loop_errors_ = 0;
  completed_ = failed_ = 0;
  delay_sum_ = 0;
  hop_sum_ = 0;
}

Tag Metrics::resolve(Tag t) const {
  auto it = tag_alias_.find(t);
  return it == tag_alias_.end() ? t : it->second;
}

void Metrics::count_lookup(std::uint32_t router_idx, TableKind kind, Tag tag) {
  (void)router_idx;
  if (tag == 0) return;  // untagged control activity
  pending_lookups_[resolve(tag)][static_cast<std::size_t>(kind)]++;
}

void Metrics::count_interest_forwarded(std::uint32_t router_idx) {
  interests_forwarded_[router_idx]++;
}

void Metrics::count_interest_hop(Tag tag) {
  if (tag == 0) return;
  pending_hops_[resolve(tag)]++;
}

void Metrics::count_drop(DropReason r) { drops_[static_cast<std::size_t>(r)]++; }

void Metrics::count_loop_error_emitted() { ++loop_errors_; }

void Metrics::alias_tag(Tag newer, Tag first) {
  if (newer != first) tag_alias_[newer] = resolve(first);
}

void Metrics::retrieval_completed(Tag first_tag, double delay_s) {
  ++completed_;
  delay_sum_ += delay_s;
  auto hit = pending_hops_.find(first_tag);
  if (hit != pending_hops_.end()) {
    hop_sum_ += hit->second;
    pending_hops_.erase(hit);
  }
  auto it = pending_lookups_.find(first_tag);
  if (it != pending_lookups_.end()) {
    for (std::size_t k = 0; k < kTableKinds; ++k) completed_lookups_[k] += it->second[k];
    pending_lookups_.erase(it);
  }
}

void Metrics::retrieval_failed(Tag first_tag) {
  ++failed_;
  pending_lookups_.erase(first_tag);
  pending_hops_.erase(first_tag);
}

void Metrics::sample_table(std::uint32_t router_idx, TableKind kind, double now,
                           std::size_t entries) {
  if (now < warmup_end_) return;
  auto& s = table_series_[router_idx][static_cast<std::size_t>(kind)];
  s.sum += static_cast<double>(entries);
  s.samples += 1;
}

double Metrics::mean_table_size(std::uint32_t router_idx, TableKind kind) const {
  const auto& s = table_series_[router_idx][static_cast<std::size_t>(kind)];
  return s.samples ? s.sum / static_cast<double>(s.samples) : 0.0;
}

double Metrics::mean_table_size(TableKind kind) const {
  double sum = 0;
  std::uint64_t n = 0;
  for (std::uint32_t r = 0; r < table_series_.size(); ++r) {
    const auto& s = table_series_[r][static_cast<std::size_t>(kind)];
    if (s.samples == 0) continue;
    sum += s.sum / static_cast<double>(s.samples);
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

double Metrics::lookups_per_retrieval(TableKind kind) const {
  if (completed_ == 0) return 0.0;
  return static_cast<double>(completed_lookups_[static_cast<std::size_t>(kind)]) /
         static_cast<double>(completed_);
}

double Metrics::mean_interests_forwarded() const {
  if (interests_forwarded_.empty()) return 0.0;
  double sum = 0;
  for (auto v : interests_forwarded_) sum += static_cast<double>(v);
  return sum / static_cast<double>(interests_forwarded_.size());
}

double RunMetrics::table_mean(TableKind k) const {
  for (const auto& row : tables)
    if (row.kind == k) return row.mean;
  return 0.0;
}

double RunMetrics::lookup_rate(TableKind k) const {
  for (const auto& row : lookups)
    if (row.kind == k) return row.per_retrieval;
  return 0.0;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_table_sizes_csv(std::ostream& out, const std::vector<RunMetrics>& runs) {
  out << "mode,rate,seed,table,router,mean_entries\n";
  for (const auto& r : runs)
    for (const auto& row : r.tables)
      for (std::size_t i = 0; i < r.router_ids.size(); ++i)
        out << r.mode << "," << format_double(r.rate) << "," << r.seed << ","
            << to_string(row.kind) << "," << r.router_ids[i] << ","
            << format_double(row.per_router_mean[i]) << "\n";
}

void write_lookups_csv(std::ostream& out, const std::vector<RunMetrics>& runs) {
  out << "mode,rate,seed,table,lookups_per_retrieval,total_lookups,completed_retrievals\n";
  for (const auto& r : runs)
    for (const auto& row : r.lookups)
      out << r.mode << "," << format_double(r.rate) << "," << r.seed << ","
          << to_string(row.kind) << "," << format_double(row.per_retrieval) << ","
          << row.total << "," << r.completed << "\n";
}

void write_delays_csv(std::ostream& out, const std::vector<RunMetrics>& runs) {
  out << "mode,rate,seed,completed,failed,mean_delay_s,mean_hops\n";
  for (const auto& r : runs)
    out << r.mode << "," << format_double(r.rate) << "," << r.seed << "," << r.completed << ","
        << r.failed << "," << format_double(r.mean_delay_s) << "," << format_double(r.mean_hops)
        << "\n";
}

void write_interests_csv(std::ostream& out, const std::vector<RunMetrics>& runs) {
  out << "mode,rate,seed,router,interests_forwarded\n";
  for (const auto& r : runs)
    for (std::size_t i = 0; i < r.router_ids.size(); ++i)
      out << r.mode << "," << format_double(r.rate) << "," << r.seed << "," << r.router_ids[i]
          << "," << r.interests_forwarded[i] << "\n";
}

}  // namespace ramp
