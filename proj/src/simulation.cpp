#include "rampsim/simulation.hpp"

#include <algorithm>
#include <queue>

#include "rampsim/ndn_router.hpp"
#include "rampsim/ramp_router.hpp"

namespace ramp {

namespace {

struct PacketArrival {
  std::uint32_t link_idx;
  std::uint32_t from_idx;
  std::uint32_t to_idx;
  Message msg;
};
struct ConsumerRequestEv {
  std::uint32_t slot;
};
struct RtoEv {
  std::uint32_t slot;
  std::uint32_t rec;
  std::uint32_t generation;
  std::uint32_t attempt;
};
struct SampleEv {};
struct LinkFailEv {
  std::uint32_t which;
};
using EvPayload = std::variant<PacketArrival, ConsumerRequestEv, RtoEv, SampleEv, LinkFailEv>;

struct Event {
  double time;
  std::uint64_t seq;
  EvPayload payload;
};
struct EventOrder {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct LinkRuntime {
  double busy_until[2] = {0, 0};
  bool up = true;
};

// One outstanding consumer request.
struct PendingReq {
  ConsumerId cons = 0;
  Name name;
  double t_first = 0;
  std::uint32_t emissions = 0;
  Tag first_tag = 0;
  Tag last_tag = 0;
  std::uint32_t generation = 0;
  bool done = true;
};

class Engine {
public:
  Engine(const RunInputs& in, const RunConfig& rc, TraceLogger* trace)
      : topo_(*in.topo), anchors_(*in.anchors), sc_(*in.scenario), rc_(rc), trace_(trace) {
    sc_.validate(topo_);
    rc_.validate();

    if (rc_.mode == Mode::Ramp) {
      tables_ = in.tables ? in.tables
                          : std::make_shared<const RouteTables>(
                                compute_routes(topo_, anchors_, hop_count_cost()));
    } else {
      fibs_ = in.fibs ? in.fibs
                      : std::make_shared<const NdnFibs>(
                            build_ndn_fibs(topo_, anchors_, hop_count_cost()));
    }

    const std::size_t nr = topo_.router_count();
    metrics_.reset(nr, sc_.warmup_frac * rc_.horizon_s);
    links_.resize(topo_.links().size());

    if (rc_.mode == Mode::Ramp) {
      RampRouterConfig rcfg;
      rcfg.aid_bits = sc_.aid_bits;
      rcfg.lsat_idle_ttl_s = sc_.lsat_ttl();
      rcfg.cache_capacity = rc_.cache_capacity;
      ramp_routers_.reserve(nr);
      for (std::uint32_t i = 0; i < nr; ++i)
        ramp_routers_.emplace_back(topo_.id_of(i), i, tables_.get(), rcfg,
                                   mix_seed(rc_.seed, 3, topo_.id_of(i)), &metrics_, trace_);
      for (const auto& [anchor, prefixes] : anchors_.bindings)
        ramp_routers_[topo_.index_of(anchor)].set_anchored_prefixes(prefixes);
    } else {
      NdnRouterConfig ncfg;
      ncfg.pit_lifetime_s = sc_.pit_lifetime_s;
      ncfg.cache_capacity = rc_.cache_capacity;
      ndn_routers_.reserve(nr);
      for (std::uint32_t i = 0; i < nr; ++i)
        ndn_routers_.emplace_back(topo_.id_of(i), i, fibs_.get(), ncfg, &metrics_, trace_);
      for (const auto& [anchor, prefixes] : anchors_.bindings)
        ndn_routers_[topo_.index_of(anchor)].set_anchored_prefixes(prefixes);
    }
    cache_static_sizes();

    catalog_ = Catalog(anchors_.all_prefixes(), sc_.cos_per_prefix);
    zipf_ = ZipfSampler(catalog_.size(), sc_.zipf_alpha);

    apps_.resize(sc_.consumers.size());
    for (std::uint32_t s = 0; s < sc_.consumers.size(); ++s) {
      AppState& app = apps_[s];
      app.router_idx = topo_.index_of(sc_.consumers[s]);
      app.stream = RequestStream(mix_seed(rc_.seed, 1, sc_.consumers[s]),
                                 rc_.rate_per_consumer, &zipf_);
      app.nonce_rng.seed(mix_seed(rc_.seed, 2, sc_.consumers[s]));
      app.pending_request = app.stream.next();
      schedule(app.pending_request.gap_s, ConsumerRequestEv{s});
    }
    app_by_router_.assign(nr, -1);
    for (std::uint32_t s = 0; s < apps_.size(); ++s)
      app_by_router_[apps_[s].router_idx] = static_cast<int>(s);

    const auto samples =
        static_cast<std::uint64_t>(rc_.horizon_s / sc_.sample_interval_s + 1e-9);
    for (std::uint64_t k = 1; k <= samples; ++k)
      schedule(sc_.sample_interval_s * static_cast<double>(k), SampleEv{});
    for (std::uint32_t i = 0; i < sc_.link_failures.size(); ++i)
      schedule(sc_.link_failures[i].time_s, LinkFailEv{i});
  }

  RunMetrics run() {
    double last_time = -1.0;
    std::uint64_t last_seq = 0;
    while (!queue_.empty()) {
      if (queue_.top().time > rc_.horizon_s) break;
      Event ev = std::move(const_cast<Event&>(queue_.top()));
      queue_.pop();
      // Engine invariant: (time, seq) strictly increases across pops.
      if (!(ev.time > last_time || (ev.time == last_time && ev.seq > last_seq)))
        throw std::logic_error("event processed out of (time, sequence) order");
      last_time = ev.time;
      last_seq = ev.seq;
      now_ = ev.time;
      std::visit([&](auto& p) { handle(p); }, ev.payload);
    }
    now_ = rc_.horizon_s;
    if (trace_) trace_->end(now_);
    return finalize();
  }

private:
  // -- scheduling ----------------------------------------------------------
  void schedule(double t, EvPayload p) { queue_.push(Event{t, seq_++, std::move(p)}); }

  void transmit(std::uint32_t from_idx, RouterId to_id, Message msg) {
    const auto& nbrs = topo_.neighbors(from_idx);
    const Topology::Neighbor* nb = nullptr;
    for (const auto& n : nbrs)
      if (n.id == to_id) {
        nb = &n;
        break;
      }
    if (!nb) return;  // neighbor vanished with the link; nothing to send on
    LinkRuntime& lr = links_[nb->link_idx];
    if (!lr.up) {
      metrics_.count_drop(DropReason::LinkDown);
      if (trace_) trace_->drop(now_, topo_.id_of(from_idx), tag_of(msg),
                               to_string(DropReason::LinkDown));
      return;
    }
    const Link& l = topo_.links()[nb->link_idx];
    int dir = l.a == topo_.id_of(from_idx) ? 0 : 1;
    double depart = std::max(now_, lr.busy_until[dir]);
    double ser = static_cast<double>(wire_bytes(msg)) * 8.0 / l.rate_bps;
    lr.busy_until[dir] = depart + ser;
    double arrive = depart + ser + l.delay_s;
    schedule(arrive, PacketArrival{nb->link_idx, from_idx, nb->idx, std::move(msg)});
  }

  static Tag tag_of(const Message& m) {
    return std::visit([](const auto& x) { return x.tag; }, m);
  }

  // -- event handlers --------------------------------------------------------
  void handle(PacketArrival& ev) {
    if (!links_[ev.link_idx].up) {
      metrics_.count_drop(DropReason::LinkDown);
      if (trace_)
        trace_->drop(now_, topo_.id_of(ev.to_idx), tag_of(ev.msg),
                     to_string(DropReason::LinkDown));
      return;
    }
    Emissions out;
    RouterId from_id = topo_.id_of(ev.from_idx);
    if (rc_.mode == Mode::Ramp) {
      RampRouter& r = ramp_routers_[ev.to_idx];
      if (auto* i = std::get_if<Interest>(&ev.msg))
        r.on_interest(Source::neighbor(from_id), *i, now_, out);
      else if (auto* d = std::get_if<DataPacket>(&ev.msg))
        r.on_data(from_id, *d, now_, out);
      else if (auto* e = std::get_if<ErrorMessage>(&ev.msg))
        r.on_error(from_id, *e, now_, out);
    } else {
      NdnRouter& r = ndn_routers_[ev.to_idx];
      if (auto* i = std::get_if<NdnInterest>(&ev.msg))
        r.on_interest(Source::neighbor(from_id), *i, now_, out);
      else if (auto* d = std::get_if<NdnData>(&ev.msg))
        r.on_data(from_id, *d, now_, out);
    }
    process_emissions(ev.to_idx, out);
  }

  void handle(ConsumerRequestEv& ev) {
    AppState& app = apps_[ev.slot];
    const Name& name = catalog_.name_of(app.pending_request.co);
    start_request(ev.slot, 1, name);
    app.pending_request = app.stream.next();
    schedule(now_ + app.pending_request.gap_s, ConsumerRequestEv{ev.slot});
  }

  void handle(RtoEv& ev) {
    AppState& app = apps_[ev.slot];
    if (ev.rec >= app.recs.size()) return;
    PendingReq& rec = app.recs[ev.rec];
    if (rec.done || rec.generation != ev.generation || rec.emissions != ev.attempt) return;
    if (rec.emissions >= 1 + sc_.max_retransmissions) {
      fail_request(ev.slot, ev.rec, "timeout-cap");
      return;
    }
    reemit(ev.slot, ev.rec);
  }

  void handle(SampleEv&) {
    const std::size_t nr = topo_.router_count();
    if (rc_.mode == Mode::Ramp) {
      for (std::uint32_t i = 0; i < nr; ++i) {
        metrics_.sample_table(i, TableKind::Prt, now_, static_prt_[i]);
        metrics_.sample_table(i, TableKind::Fab, now_, static_fab_[i]);
        metrics_.sample_table(i, TableKind::Lsat, now_, ramp_routers_[i].lsat_size(now_));
      }
    } else {
      for (std::uint32_t i = 0; i < nr; ++i) {
        metrics_.sample_table(i, TableKind::Fib, now_, static_fab_[i]);
        metrics_.sample_table(i, TableKind::Pit, now_, ndn_routers_[i].pit_size(now_));
        ndn_routers_[i].expire_pit(now_);
      }
    }
  }

  void handle(LinkFailEv& ev) {
    const auto& f = sc_.link_failures[ev.which];
    int li = topo_.link_between(f.a, f.b);
    if (li < 0 || !links_[li].up) return;
    links_[li].up = false;
    if (trace_) trace_->link_down(now_, f.a, f.b);

    // Local detection at both endpoints, lower id first.
    RouterId lo = std::min(f.a, f.b), hi = std::max(f.a, f.b);
    for (RouterId end : {lo, hi}) {
      RouterId peer = end == f.a ? f.b : f.a;
      Emissions out;
      std::uint32_t idx = topo_.index_of(end);
      if (rc_.mode == Mode::Ramp) ramp_routers_[idx].on_link_failure(peer, now_, out);
      process_emissions(idx, out);
    }

    if (sc_.refresh_tables_on_failure) refresh_tables();
  }

  void refresh_tables() {
    Topology reduced;
    for (RouterId r : topo_.routers()) reduced.add_router(r);
    for (std::uint32_t i = 0; i < topo_.links().size(); ++i) {
      if (!links_[i].up) continue;
      const Link& l = topo_.links()[i];
      reduced.add_link(l.a, l.b, l.delay_s, l.rate_bps);
    }
    if (rc_.mode == Mode::Ramp) {
      tables_ = std::make_shared<const RouteTables>(
          compute_routes(reduced, anchors_, hop_count_cost()));
      for (auto& r : ramp_routers_) r.set_tables(tables_.get());
    } else {
      fibs_ = std::make_shared<const NdnFibs>(
          build_ndn_fibs(reduced, anchors_, hop_count_cost()));
      for (auto& r : ndn_routers_) r.set_tables(fibs_.get());
    }
    cache_static_sizes();
  }

  void cache_static_sizes() {
    const std::size_t nr = topo_.router_count();
    static_prt_.assign(nr, 0);
    static_fab_.assign(nr, 0);
    for (std::uint32_t i = 0; i < nr; ++i) {
      if (rc_.mode == Mode::Ramp) {
        static_prt_[i] = tables_->prt_entry_count(i);
        static_fab_[i] = tables_->fab_entry_count(i);
      } else {
        static_fab_[i] = fibs_->fib_entry_count(i);
      }
    }
  }

  // -- consumer application ---------------------------------------------------
  struct AppState {
    std::uint32_t router_idx = 0;
    RequestStream stream;
    RequestStream::Request pending_request{0, 0};
    std::mt19937_64 nonce_rng;
    std::vector<PendingReq> recs;
    std::vector<std::uint32_t> free_recs;
    std::unordered_map<Name, std::vector<std::uint32_t>, NameHash> by_name;
  };

  std::uint32_t alloc_rec(AppState& app) {
    if (!app.free_recs.empty()) {
      std::uint32_t i = app.free_recs.back();
      app.free_recs.pop_back();
      return i;
    }
    app.recs.push_back(PendingReq{});
    return static_cast<std::uint32_t>(app.recs.size() - 1);
  }

  void release_rec(AppState& app, std::uint32_t idx) {
    PendingReq& rec = app.recs[idx];
    auto it = app.by_name.find(rec.name);
    if (it != app.by_name.end()) {
      auto& v = it->second;
      v.erase(std::remove(v.begin(), v.end(), idx), v.end());
      if (v.empty()) app.by_name.erase(it);
    }
    rec.done = true;
    rec.generation++;
    app.free_recs.push_back(idx);
  }

  void start_request(std::uint32_t slot, ConsumerId cons, const Name& name) {
    AppState& app = apps_[slot];
    std::uint32_t idx = alloc_rec(app);
    PendingReq& rec = app.recs[idx];
    Tag tag = next_tag_++;
    rec.cons = cons;
    rec.name = name;
    rec.t_first = now_;
    rec.emissions = 1;
    rec.first_tag = tag;
    rec.last_tag = tag;
    rec.done = false;
    app.by_name[name].push_back(idx);
    if (trace_) trace_->req(now_, topo_.id_of(app.router_idx), cons, tag, name, false);
    schedule(now_ + sc_.rto_s, RtoEv{slot, idx, rec.generation, rec.emissions});
    emit_interest(slot, cons, name, tag);
  }

  void reemit(std::uint32_t slot, std::uint32_t idx) {
    AppState& app = apps_[slot];
    PendingReq& rec = app.recs[idx];
    Tag tag = next_tag_++;
    rec.emissions++;
    rec.last_tag = tag;
    metrics_.alias_tag(tag, rec.first_tag);
    if (trace_) trace_->req(now_, topo_.id_of(app.router_idx), rec.cons, tag, rec.name, true);
    schedule(now_ + sc_.rto_s, RtoEv{slot, idx, rec.generation, rec.emissions});
    emit_interest(slot, rec.cons, rec.name, tag);
  }

  void emit_interest(std::uint32_t slot, ConsumerId cons, const Name& name, Tag tag) {
    AppState& app = apps_[slot];
    Emissions out;
    if (rc_.mode == Mode::Ramp) {
      Interest i;
      i.name = name;
      i.tag = tag;
      ramp_routers_[app.router_idx].on_interest(Source::consumer(cons), i, now_, out);
    } else {
      NdnInterest i;
      i.name = name;
      i.nonce = static_cast<Nonce>(app.nonce_rng());
      i.tag = tag;
      ndn_routers_[app.router_idx].on_interest(Source::consumer(cons), i, now_, out);
    }
    process_emissions(app.router_idx, out);
  }

  void fail_request(std::uint32_t slot, std::uint32_t idx, const char* reason) {
    AppState& app = apps_[slot];
    PendingReq& rec = app.recs[idx];
    if (trace_) trace_->fail(now_, topo_.id_of(app.router_idx), rec.cons, rec.name, reason);
    metrics_.retrieval_failed(rec.first_tag);
    release_rec(app, idx);
  }

  void app_deliver(std::uint32_t router_idx, const DeliverToConsumer& d) {
    int slot = app_by_router_[router_idx];
    bool matched = false;
    if (slot >= 0) {
      AppState& app = apps_[slot];
      auto it = app.by_name.find(d.name);
      if (it != app.by_name.end()) {
        // Completing recs mutates by_name; walk a copy of the index list.
        std::vector<std::uint32_t> idxs = it->second;
        for (std::uint32_t idx : idxs) {
          PendingReq& rec = app.recs[idx];
          if (rec.done || rec.cons != d.consumer) continue;
          matched = true;
          double delay = now_ - rec.t_first;
          if (trace_)
            trace_->data_delivered(now_, topo_.id_of(router_idx), rec.cons, d.tag, d.name,
                                   delay);
          metrics_.retrieval_completed(rec.first_tag, delay);
          release_rec(app, idx);
        }
      }
    }
    if (!matched) {
      metrics_.count_drop(DropReason::NoWaitingConsumer);
      if (trace_)
        trace_->drop(now_, topo_.id_of(router_idx), d.tag,
                     to_string(DropReason::NoWaitingConsumer));
    }
  }

  void app_notify(std::uint32_t router_idx, const NotifyConsumer& n) {
    int slot = app_by_router_[router_idx];
    if (slot < 0) return;
    AppState& app = apps_[slot];
    if (!n.name) return;  // flow-level errors always carry a resolved name here
    auto it = app.by_name.find(*n.name);
    if (it == app.by_name.end()) return;
    std::vector<std::uint32_t> idxs = it->second;
    for (std::uint32_t idx : idxs) {
      PendingReq& rec = app.recs[idx];
      if (rec.done || rec.cons != n.consumer) continue;
      Tag note_tag = n.tag != 0 ? n.tag : rec.last_tag;
      if (trace_)
        trace_->error_notified(now_, topo_.id_of(router_idx), rec.cons, note_tag, n.code,
                               &*n.name);
      bool retryable = n.code == ErrorCode::LinkFailure || n.code == ErrorCode::Loop;
      if (retryable && rec.emissions < 1 + sc_.max_retransmissions) {
        reemit(slot, idx);
      } else {
        fail_request(slot, idx, to_string(n.code));
      }
    }
  }

  void process_emissions(std::uint32_t router_idx, Emissions& out) {
    for (auto& em : out) {
      if (auto* s = std::get_if<SendToNeighbor>(&em)) {
        if (trace_) {
          if (auto* i = std::get_if<Interest>(&s->msg))
            trace_->interest_fwd(now_, topo_.id_of(router_idx), s->to, *i);
          else if (auto* ni = std::get_if<NdnInterest>(&s->msg))
            trace_->ndn_interest_fwd(now_, topo_.id_of(router_idx), s->to, *ni);
          else if (auto* d = std::get_if<DataPacket>(&s->msg))
            trace_->data_fwd(now_, topo_.id_of(router_idx), s->to, d->name, d->tag, d->aid,
                             true);
          else if (auto* nd = std::get_if<NdnData>(&s->msg))
            trace_->data_fwd(now_, topo_.id_of(router_idx), s->to, nd->name, nd->tag, 0, false);
          else if (auto* e = std::get_if<ErrorMessage>(&s->msg))
            trace_->error_fwd(now_, topo_.id_of(router_idx), s->to, *e);
        }
        if (std::holds_alternative<Interest>(s->msg) ||
            std::holds_alternative<NdnInterest>(s->msg)) {
          metrics_.count_interest_forwarded(router_idx);
          metrics_.count_interest_hop(tag_of(s->msg));
        }
        transmit(router_idx, s->to, std::move(s->msg));
      } else if (auto* d = std::get_if<DeliverToConsumer>(&em)) {
        app_deliver(router_idx, *d);
      } else if (auto* nf = std::get_if<NotifyConsumer>(&em)) {
        app_notify(router_idx, *nf);
      }
    }
    out.clear();
  }

  // -- results ---------------------------------------------------------------
  RunMetrics finalize() {
    RunMetrics rm;
    rm.mode = to_string(rc_.mode);
    rm.rate = rc_.rate_per_consumer;
    rm.seed = rc_.seed;
    rm.router_ids = topo_.routers();
    const std::size_t nr = topo_.router_count();

    auto add_table = [&](TableKind k) {
      RunMetrics::TableRow row;
      row.kind = k;
      row.per_router_mean.resize(nr);
      for (std::uint32_t i = 0; i < nr; ++i) row.per_router_mean[i] = metrics_.mean_table_size(i, k);
      row.mean = metrics_.mean_table_size(k);
      rm.tables.push_back(std::move(row));
    };
    auto add_lookup = [&](TableKind k) {
      rm.lookups.push_back(
          RunMetrics::LookupRow{k, metrics_.total_lookups(k), metrics_.lookups_per_retrieval(k)});
    };
    if (rc_.mode == Mode::Ramp) {
      add_table(TableKind::Prt);
      add_table(TableKind::Fab);
      add_table(TableKind::Lsat);
      add_lookup(TableKind::Prt);
      add_lookup(TableKind::Fab);
      add_lookup(TableKind::Lsat);
    } else {
      add_table(TableKind::Fib);
      add_table(TableKind::Pit);
      add_lookup(TableKind::Fib);
      add_lookup(TableKind::Pit);
    }
    rm.completed = metrics_.completed();
    rm.failed = metrics_.failed();
    rm.mean_delay_s = metrics_.mean_delay_s();
    rm.mean_hops = metrics_.mean_hops();
    rm.interests_forwarded = metrics_.interests_forwarded();
    rm.mean_interests_forwarded = metrics_.mean_interests_forwarded();
    rm.loop_errors = metrics_.loop_errors_emitted();
    return rm;
  }

  // -- members ----------------------------------------------------------------
  const Topology& topo_;
  const AnchorAssignment& anchors_;
  ScenarioConfig sc_;
  RunConfig rc_;
  TraceLogger* trace_;

  std::shared_ptr<const RouteTables> tables_;
  std::shared_ptr<const NdnFibs> fibs_;
  std::vector<RampRouter> ramp_routers_;
  std::vector<NdnRouter> ndn_routers_;
  std::vector<LinkRuntime> links_;
  std::vector<std::size_t> static_prt_, static_fab_;

  Catalog catalog_;
  ZipfSampler zipf_;
  std::vector<AppState> apps_;
  std::vector<int> app_by_router_;

  Metrics metrics_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  std::uint64_t seq_ = 0;
  Tag next_tag_ = 1;
  double now_ = 0;
};

}  // namespace

RunMetrics run_simulation(const RunInputs& in, const RunConfig& rc, TraceLogger* trace) {
  Engine e(in, rc, trace);
  return e.run();
}

AuditedRun run_simulation_audited(const RunInputs& in, const RunConfig& rc) {
  TraceAuditor auditor;
  TraceLogger logger;
  logger.add_sink([&](std::string_view line) { auditor.feed_line(line); });
  AuditedRun out;
  out.metrics = run_simulation(in, rc, &logger);
  out.audit = auditor.finish();
  return out;
}

}  // namespace ramp
