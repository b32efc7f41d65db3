#include "rampsim/ndn_router.hpp"

#include <algorithm>

namespace ramp {

NdnRouter::NdnRouter(RouterId id, std::uint32_t idx, const NdnFibs* fibs, NdnRouterConfig cfg,
                     Metrics* metrics, TraceLogger* trace)
    : id_(id), idx_(idx), fibs_(fibs), cfg_(cfg), metrics_(metrics), trace_(trace),
      cs_(cfg.cache_capacity) {}

void NdnRouter::set_anchored_prefixes(const std::vector<NamePrefix>& prefixes) {
  for (const auto& p : prefixes) anchored_.insert(p, true);
}

bool NdnRouter::has_local_content(const Name& n) {
  if (anchored_.lpm(n) != nullptr) return true;
  return cs_.lookup(n).has_value();
}

void NdnRouter::on_interest(Source from, const NdnInterest& interest, double now,
                            Emissions& out) {
  const Name& name = interest.name;

  if (const auto* anc = anchored_.lpm(name); anc != nullptr) {
    if (from.is_consumer)
      out.push_back(DeliverToConsumer{from.id, name, payload_for(name), interest.tag});
    else
      out.push_back(SendToNeighbor{from.id, NdnData{name, payload_for(name), interest.tag}});
    return;
  }
  if (auto cached = cs_.lookup(name)) {
    if (from.is_consumer)
      out.push_back(DeliverToConsumer{from.id, name, *cached, interest.tag});
    else
      out.push_back(SendToNeighbor{from.id, NdnData{name, *cached, interest.tag}});
    return;
  }

  metrics_->count_lookup(idx_, TableKind::Pit, interest.tag);
  auto it = pit_.find(name);
  if (it != pit_.end() && entry_expired(it->second, now)) {
    pit_.erase(it);
    it = pit_.end();
  }
  if (it != pit_.end()) {
    PitEntry& e = it->second;
    if (std::find(e.nonces.begin(), e.nonces.end(), interest.nonce) != e.nonces.end()) {
      // Same nonce seen before: assume it came around a loop.
      metrics_->count_drop(DropReason::DuplicateNonce);
      if (trace_) trace_->drop(now, id_, interest.tag, to_string(DropReason::DuplicateNonce));
      return;
    }
    e.nonces.push_back(interest.nonce);
    e.downstreams.push_back(PitDownstream{from.as_prev_hop(), from.is_consumer ? from.id : 0,
                                          interest.tag});
    if (trace_) trace_->aggregated(now, id_, interest.tag, name);
    return;
  }

  metrics_->count_lookup(idx_, TableKind::Fib, interest.tag);
  auto pid = fibs_->prefixes.lpm(name);
  if (!pid || fibs_->fib_rows(idx_, *pid).empty()) {
    metrics_->count_drop(DropReason::NoFibRoute);
    if (trace_) trace_->drop(now, id_, interest.tag, to_string(DropReason::NoFibRoute));
    return;
  }
  const NextHop& hop = fibs_->fib_rows(idx_, *pid)[0];
  PitEntry e;
  e.nonces.push_back(interest.nonce);
  e.downstreams.push_back(
      PitDownstream{from.as_prev_hop(), from.is_consumer ? from.id : 0, interest.tag});
  e.upstream = hop.next;
  e.created = now;
  pit_.emplace(name, std::move(e));
  out.push_back(SendToNeighbor{hop.next, NdnInterest{name, interest.nonce, interest.tag}});
}

void NdnRouter::on_data(RouterId from, const NdnData& dp, double now, Emissions& out) {
  (void)from;
  metrics_->count_lookup(idx_, TableKind::Pit, dp.tag);
  auto it = pit_.find(dp.name);
  if (it == pit_.end() || entry_expired(it->second, now)) {
    if (it != pit_.end()) pit_.erase(it);
    metrics_->count_drop(DropReason::NoPitEntry);
    if (trace_) trace_->drop(now, id_, dp.tag, to_string(DropReason::NoPitEntry));
    return;
  }
  for (const PitDownstream& d : it->second.downstreams) {
    if (d.face == kLocalHop)
      out.push_back(DeliverToConsumer{d.consumer, dp.name, dp.content, d.tag});
    else
      out.push_back(SendToNeighbor{d.face, NdnData{dp.name, dp.content, d.tag}});
  }
  pit_.erase(it);
  if (cs_.enabled()) cs_.insert(dp.name, dp.content);
}

void NdnRouter::expire_pit(double now) {
  for (auto it = pit_.begin(); it != pit_.end();) {
    if (entry_expired(it->second, now))
      it = pit_.erase(it);
    else
      ++it;
  }
}

std::size_t NdnRouter::pit_size(double now) const {
  std::size_t n = 0;
  for (const auto& [name, e] : pit_)
    if (!entry_expired(e, now)) ++n;
  return n;
}

const PitEntry* NdnRouter::pit_entry(const Name& n) const {
  auto it = pit_.find(n);
  return it == pit_.end() ? nullptr : &it->second;
}

}  // namespace ramp
