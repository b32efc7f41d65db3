#include "rampsim/ramp_router.hpp"

#include <algorithm>
#include <cmath>

namespace ramp {

namespace {
constexpr double kConsumerDistance = std::numeric_limits<double>::infinity();
}

RampRouter::RampRouter(RouterId id, std::uint32_t idx, const RouteTables* tables,
                       RampRouterConfig cfg, std::uint64_t aid_seed, Metrics* metrics,
                       TraceLogger* trace)
    : id_(id),
      idx_(idx),
      tables_(tables),
      cfg_(cfg),
      metrics_(metrics),
      trace_(trace),
      aid_rng_(aid_seed),
      cs_(cfg.cache_capacity) {
  aid_mask_ = cfg_.aid_bits >= 32 ? 0xffffffffu : ((1u << cfg_.aid_bits) - 1u);
  // Labels stay out of the router/consumer id range so no header field can
  // coincide with an identity at realistic widths.
  aid_floor_ = cfg_.aid_bits >= 17 ? 0x10000u : 0u;
  next_map_ = aid_floor_;
}

void RampRouter::set_anchored_prefixes(const std::vector<NamePrefix>& prefixes) {
  for (const auto& p : prefixes) anchored_.insert(p, true);
}

bool RampRouter::has_local_content(const Name& n) {
  if (anchored_.lpm(n) != nullptr) return true;
  return cs_.lookup(n).has_value();
}

std::uint64_t RampRouter::payload_for(const Name& n) const { return n.hash(); }

// ---------------------------------------------------------------------------
// label allocation

Aid RampRouter::allocate_origin_aid(RouterId anchor) {
  auto it = origin_aids_.find(anchor);
  if (it != origin_aids_.end()) return it->second;

  const std::uint64_t space = static_cast<std::uint64_t>(aid_mask_) - aid_floor_ + 1;
  const std::uint64_t max_tries = std::max<std::uint64_t>(64, space * 4);
  for (std::uint64_t tries = 0; tries < max_tries; ++tries) {
    Aid v = static_cast<Aid>(aid_floor_ + aid_rng_() % space);
    bool clash = false;
    for (const auto& [a, existing] : origin_aids_)
      if (existing == v) clash = true;
    if (!clash)
      for (const auto& e : entries_)
        if (e.valid && e.aid_in == v) clash = true;
    if (!clash) {
      origin_aids_[anchor] = v;
      return v;
    }
  }
  throw AidSpaceExhausted();
}

Aid RampRouter::allocate_map() {
  if (!map_free_.empty()) {
    Aid v = map_free_.back();
    map_free_.pop_back();
    return v;
  }
  if (next_map_ > aid_mask_) throw AidSpaceExhausted();
  return static_cast<Aid>(next_map_++);
}

// ---------------------------------------------------------------------------
// LSAT maintenance

LsatEntry* RampRouter::lookup_flow(Aid aid, RouterId prev, double now) {
  auto it = by_flow_.find(flow_key(aid, prev));
  if (it == by_flow_.end()) return nullptr;
  LsatEntry& e = entries_[it->second];
  if (!e.valid) return nullptr;
  if (expired(e, now)) {
    invalidate(e);
    return nullptr;
  }
  return &e;
}

LsatEntry* RampRouter::lookup_map(Aid map_out, double now) {
  auto it = by_map_.find(map_out);
  if (it == by_map_.end()) return nullptr;
  LsatEntry& e = entries_[it->second];
  if (!e.valid) return nullptr;
  if (expired(e, now)) {
    invalidate(e);
    return nullptr;
  }
  return &e;
}

void RampRouter::invalidate(LsatEntry& e) {
  if (!e.valid) return;
  e.valid = false;
  by_flow_.erase(flow_key(e.aid_in, e.prev_hop));
  by_map_.erase(e.map_out);
  map_free_.push_back(e.map_out);
}

LsatEntry& RampRouter::create_entry(Aid aid, RouterId prev, const NextHop& hop,
                                    RouterId anchor, std::uint32_t anchor_pos, double now) {
  LsatEntry e;
  e.aid_in = aid;
  e.prev_hop = prev;
  e.next_hop = hop.next;
  e.next_hop_idx = hop.next_idx;
  e.map_out = allocate_map();
  e.distance = hop.dist;
  e.anchor = anchor;
  e.anchor_pos = anchor_pos;
  e.valid = true;
  e.last_used = now;
  entries_.push_back(e);
  std::uint32_t slot = static_cast<std::uint32_t>(entries_.size() - 1);
  by_flow_[flow_key(aid, prev)] = slot;
  by_map_[e.map_out] = slot;
  return entries_.back();
}

std::size_t RampRouter::lsat_size(double now) const {
  std::size_t n = 0;
  for (const auto& e : entries_)
    if (e.valid && !expired(e, now)) ++n;
  return n;
}

const std::vector<ConsumerId>* RampRouter::lrt_consumers(const Name& n) const {
  auto it = lrt_.find(n);
  return it == lrt_.end() ? nullptr : &it->second.consumers;
}

// ---------------------------------------------------------------------------
// admission rule

bool RampRouter::alf_admits(Aid aid, RouterId prev_hop, double stated_distance,
                            double candidate_distance, double now) {
  if (LsatEntry* e = lookup_flow(aid, prev_hop, now)) return stated_distance > e->distance;
  return stated_distance > candidate_distance;
}

// ---------------------------------------------------------------------------
// handlers

void RampRouter::on_interest(Source from, const Interest& interest, double now,
                             Emissions& out) {
  const Name& name = interest.name;

  // Content available here: answer and leave all state untouched.
  if (const auto* anc = anchored_.lpm(name); anc != nullptr) {
    if (from.is_consumer)
      out.push_back(DeliverToConsumer{from.id, name, payload_for(name), interest.tag});
    else
      out.push_back(SendToNeighbor{
          from.id, DataPacket{name, interest.aid, payload_for(name), 0, interest.tag}});
    return;
  }
  if (auto cached = cs_.lookup(name)) {
    if (from.is_consumer)
      out.push_back(DeliverToConsumer{from.id, name, *cached, interest.tag});
    else
      out.push_back(
          SendToNeighbor{from.id, DataPacket{name, interest.aid, *cached, 0, interest.tag}});
    return;
  }

  auto send_error = [&](ErrorCode code, Aid aid_for_sender) {
    if (code == ErrorCode::Loop) metrics_->count_loop_error_emitted();
    if (from.is_consumer)
      out.push_back(NotifyConsumer{from.id, name, code, interest.tag});
    else
      out.push_back(SendToNeighbor{
          from.id, ErrorMessage{name, aid_for_sender, interest.anchor, code, interest.tag}});
  };

  Aid aid;
  RouterId anchor;
  int anchor_pos;
  double stated;
  if (from.is_consumer) {
    metrics_->count_lookup(idx_, TableKind::Prt, interest.tag);
    auto pid = tables_->prefixes.lpm(name);
    if (!pid || tables_->prt_rows(idx_, *pid).empty()) {
      send_error(ErrorCode::NoRoute, 0);
      return;
    }
    const RankedAnchor& best = tables_->prt_rows(idx_, *pid)[0];
    anchor = best.anchor;
    anchor_pos = static_cast<int>(best.anchor_idx);
    aid = allocate_origin_aid(anchor);
    stated = kConsumerDistance;
    auto& lrt = lrt_[name];
    lrt.bound_aid = aid;
    auto pos = std::lower_bound(lrt.consumers.begin(), lrt.consumers.end(), from.id);
    if (pos == lrt.consumers.end() || *pos != from.id) lrt.consumers.insert(pos, from.id);
  } else {
    aid = interest.aid;
    anchor = interest.anchor;
    anchor_pos = tables_->anchor_pos(anchor);
    stated = interest.distance;
  }

  // The bound anchor lacks the exact object: misconfiguration, not a loop.
  if (id_ == anchor) {
    send_error(ErrorCode::NoContent, aid);
    return;
  }

  metrics_->count_lookup(idx_, TableKind::Lsat, interest.tag);
  RouterId prev = from.as_prev_hop();
  if (LsatEntry* e = lookup_flow(aid, prev, now)) {
    // Reuse is still an admission: the stated distance must strictly exceed
    // the stored one, or the flow state upstream has gone inconsistent and
    // forwarding could cycle.
    if (!(stated > e->distance)) {
      send_error(ErrorCode::Loop, aid);
      return;
    }
    e->last_used = now;
    out.push_back(SendToNeighbor{
        e->next_hop, Interest{name, e->map_out, anchor, e->distance, interest.tag}});
    return;
  }

  if (anchor_pos < 0) {
    send_error(ErrorCode::NoRoute, aid);
    return;
  }
  metrics_->count_lookup(idx_, TableKind::Fab, interest.tag);
  auto rows = tables_->fab_rows(idx_, static_cast<std::uint32_t>(anchor_pos));
  if (rows.empty()) {
    send_error(ErrorCode::NoRoute, aid);
    return;
  }
  for (const NextHop& hop : rows) {
    if (!alf_admits(aid, prev, stated, hop.dist, now)) continue;
    LsatEntry& e =
        create_entry(aid, prev, hop, anchor, static_cast<std::uint32_t>(anchor_pos), now);
    out.push_back(
        SendToNeighbor{e.next_hop, Interest{name, e.map_out, anchor, e.distance, interest.tag}});
    return;
  }
  send_error(ErrorCode::Loop, aid);
}

void RampRouter::on_data(RouterId from, const DataPacket& dp, double now, Emissions& out) {
  (void)from;
  metrics_->count_lookup(idx_, TableKind::Lsat, dp.tag);
  LsatEntry* e = lookup_map(dp.aid, now);
  if (!e) {
    metrics_->count_drop(DropReason::NoLsatEntry);
    if (trace_) trace_->drop(now, id_, dp.tag, to_string(DropReason::NoLsatEntry));
    return;
  }
  e->last_used = now;
  if (e->prev_hop == kLocalHop) {
    auto it = lrt_.find(dp.name);
    if (it == lrt_.end() || it->second.consumers.empty()) {
      metrics_->count_drop(DropReason::NoWaitingConsumer);
      if (trace_) trace_->drop(now, id_, dp.tag, to_string(DropReason::NoWaitingConsumer));
    } else {
      for (ConsumerId c : it->second.consumers)
        out.push_back(DeliverToConsumer{c, dp.name, dp.content, dp.tag});
      lrt_.erase(it);
    }
  } else {
    out.push_back(
        SendToNeighbor{e->prev_hop, DataPacket{dp.name, e->aid_in, dp.content, dp.sp, dp.tag}});
  }
  if (cs_.enabled()) cs_.insert(dp.name, dp.content);
}

void RampRouter::notify_or_forward_error(LsatEntry& e, const std::optional<Name>& name,
                                         ErrorCode code, Tag tag, Emissions& out) {
  if (e.prev_hop != kLocalHop) {
    out.push_back(
        SendToNeighbor{e.prev_hop, ErrorMessage{name, e.aid_in, e.anchor, code, tag}});
    return;
  }
  if (name) {
    auto it = lrt_.find(*name);
    if (it == lrt_.end()) return;
    for (ConsumerId c : it->second.consumers)
      out.push_back(NotifyConsumer{c, *name, code, tag});
    lrt_.erase(it);
    return;
  }
  // Flow-level error (no name): every request riding this origin label is
  // affected. Collect deterministically by name order.
  std::vector<Name> names;
  for (const auto& [n, entry] : lrt_)
    if (entry.bound_aid == e.aid_in) names.push_back(n);
  std::sort(names.begin(), names.end());
  for (const Name& n : names) {
    auto it = lrt_.find(n);
    for (ConsumerId c : it->second.consumers)
      out.push_back(NotifyConsumer{c, n, code, tag});
    lrt_.erase(it);
  }
}

void RampRouter::on_error(RouterId from, const ErrorMessage& err, double now, Emissions& out) {
  (void)from;
  metrics_->count_lookup(idx_, TableKind::Lsat, err.tag);
  LsatEntry* e = lookup_map(err.aid, now);
  if (!e) {
    metrics_->count_drop(DropReason::NoLsatEntry);
    if (trace_) trace_->drop(now, id_, err.tag, to_string(DropReason::NoLsatEntry));
    return;
  }
  notify_or_forward_error(*e, err.name, err.code, err.tag, out);
  invalidate(*e);
}

void RampRouter::on_link_failure(RouterId neighbor, double now, Emissions& out) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    LsatEntry& e = entries_[i];
    if (!e.valid || e.next_hop != neighbor) continue;
    if (expired(e, now)) {
      invalidate(e);
      continue;
    }
    notify_or_forward_error(e, std::nullopt, ErrorCode::LinkFailure, 0, out);
    invalidate(e);
  }
}

}  // namespace ramp
