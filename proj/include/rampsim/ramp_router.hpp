// Anchor-routing data plane with label-swapped reverse paths: per-router
// label-swap table (LSAT), local request table (LRT), content store, and the
// Interest/data/error/link-failure handlers with the distance-based
// loop-free admission rule.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "rampsim/content_store.hpp"
#include "rampsim/metrics.hpp"
#include "rampsim/packets.hpp"
#include "rampsim/route_tables.hpp"
#include "rampsim/trace.hpp"

namespace ramp {

class AidSpaceExhausted : public std::runtime_error {
public:
  AidSpaceExhausted() : std::runtime_error("aid space exhausted") {}
};

struct LsatEntry {
  Aid aid_in = 0;
  RouterId prev_hop = kLocalHop;
  RouterId next_hop = 0;
  std::uint32_t next_hop_idx = 0;
  Aid map_out = 0;
  double distance = 0;
  RouterId anchor = 0;
  std::uint32_t anchor_pos = 0;
  bool valid = false;
  double last_used = 0;
};

struct RampRouterConfig {
  unsigned aid_bits = 32;          // label width
  double lsat_idle_ttl_s = 10.0;   // idle entries become invalid lazily
  std::size_t cache_capacity = 0;  // 0 = caching off
};

class RampRouter {
public:
  RampRouter(RouterId id, std::uint32_t idx, const RouteTables* tables,
             RampRouterConfig cfg, std::uint64_t aid_seed, Metrics* metrics,
             TraceLogger* trace);

  RouterId id() const { return id_; }

  // Marks prefixes whose full content is hosted here.
  void set_anchored_prefixes(const std::vector<NamePrefix>& prefixes);
  // Swaps in fresh control-plane tables (e.g. after a failure).
  void set_tables(const RouteTables* tables) { tables_ = tables; }

  void on_interest(Source from, const Interest& interest, double now, Emissions& out);
  void on_data(RouterId from, const DataPacket& dp, double now, Emissions& out);
  void on_error(RouterId from, const ErrorMessage& err, double now, Emissions& out);
  void on_link_failure(RouterId neighbor, double now, Emissions& out);

  // Admission rule: with no flow entry for (aid, from), the Interest's stated
  // distance must strictly exceed the candidate hop's distance; with an
  // entry, it must strictly exceed the entry's stored distance.
  bool alf_admits(Aid aid, RouterId prev_hop, double stated_distance,
                  double candidate_distance, double now);

  // Stable per-anchor label for flows this router originates; never collides
  // with an aid_in currently valid here.
  Aid allocate_origin_aid(RouterId anchor);
  // Outgoing label, unique among valid entries; freed labels are reused.
  Aid allocate_map();

  std::size_t lsat_size(double now) const;  // valid, unexpired entries
  const std::vector<LsatEntry>& lsat_entries() const { return entries_; }
  std::size_t lrt_size() const { return lrt_.size(); }
  const std::vector<ConsumerId>* lrt_consumers(const Name& n) const;
  ContentStore& content_store() { return cs_; }

  // True when the name falls under a prefix anchored here (full content) or
  // sits in the cache.
  bool has_local_content(const Name& n);

private:
  struct LrtEntry {
    std::vector<ConsumerId> consumers;  // sorted
    Aid bound_aid = 0;                  // origin label of the flow awaiting this name
  };

  static std::uint64_t flow_key(Aid aid, RouterId prev) {
    return (static_cast<std::uint64_t>(aid) << 32) | prev;
  }

  LsatEntry* lookup_flow(Aid aid, RouterId prev, double now);
  LsatEntry* lookup_map(Aid map_out, double now);
  void invalidate(LsatEntry& e);
  bool expired(const LsatEntry& e, double now) const {
    return now - e.last_used > cfg_.lsat_idle_ttl_s;
  }
  LsatEntry& create_entry(Aid aid, RouterId prev, const NextHop& hop, RouterId anchor,
                          std::uint32_t anchor_pos, double now);
  std::uint64_t payload_for(const Name& n) const;
  void notify_or_forward_error(LsatEntry& e, const std::optional<Name>& name, ErrorCode code,
                               Tag tag, Emissions& out);

  RouterId id_;
  std::uint32_t idx_;
  const RouteTables* tables_;
  RampRouterConfig cfg_;
  Metrics* metrics_;
  TraceLogger* trace_;

  Aid aid_mask_;
  Aid aid_floor_;
  std::mt19937_64 aid_rng_;
  std::map<RouterId, Aid> origin_aids_;  // anchor -> stable label
  std::uint64_t next_map_ = 0;
  std::vector<Aid> map_free_;

  std::vector<LsatEntry> entries_;
  std::unordered_map<std::uint64_t, std::uint32_t> by_flow_;
  std::unordered_map<Aid, std::uint32_t> by_map_;

  std::unordered_map<Name, LrtEntry, NameHash> lrt_;
  ContentStore cs_;
  PrefixTrie<bool> anchored_;
};

}  // namespace ramp
