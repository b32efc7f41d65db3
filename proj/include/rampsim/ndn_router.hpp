// Minimal NDN-style baseline data plane: per-prefix FIB, pending-Interest
// table with nonce dedup and aggregation, and an LRU content store.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rampsim/content_store.hpp"
#include "rampsim/metrics.hpp"
#include "rampsim/packets.hpp"
#include "rampsim/route_tables.hpp"
#include "rampsim/trace.hpp"

namespace ramp {

struct PitDownstream {
  RouterId face = kLocalHop;  // kLocalHop for a local consumer
  ConsumerId consumer = 0;
  Tag tag = 0;
};

struct PitEntry {
  std::vector<Nonce> nonces;
  std::vector<PitDownstream> downstreams;  // arrival order
  RouterId upstream = 0;
  double created = 0;
};

struct NdnRouterConfig {
  double pit_lifetime_s = 2.0;
  std::size_t cache_capacity = 0;
};

class NdnRouter {
public:
  NdnRouter(RouterId id, std::uint32_t idx, const NdnFibs* fibs, NdnRouterConfig cfg,
            Metrics* metrics, TraceLogger* trace);

  RouterId id() const { return id_; }
  void set_anchored_prefixes(const std::vector<NamePrefix>& prefixes);
  void set_tables(const NdnFibs* fibs) { fibs_ = fibs; }

  void on_interest(Source from, const NdnInterest& interest, double now, Emissions& out);
  void on_data(RouterId from, const NdnData& dp, double now, Emissions& out);
  // Drops entries older than the configured lifetime.
  void expire_pit(double now);

  std::size_t pit_size(double now) const;  // entries not yet expired
  const PitEntry* pit_entry(const Name& n) const;
  ContentStore& content_store() { return cs_; }
  bool has_local_content(const Name& n);

private:
  bool entry_expired(const PitEntry& e, double now) const {
    return now - e.created > cfg_.pit_lifetime_s;
  }
  std::uint64_t payload_for(const Name& n) const { return n.hash(); }

  RouterId id_;
  std::uint32_t idx_;
  const NdnFibs* fibs_;
  NdnRouterConfig cfg_;
  Metrics* metrics_;
  TraceLogger* trace_;

  std::unordered_map<Name, PitEntry, NameHash> pit_;
  ContentStore cs_;
  PrefixTrie<bool> anchored_;
};

}  // namespace ramp
