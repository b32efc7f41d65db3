#include "rampsim/control_plane.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ramp {

int RouteTables::anchor_pos(RouterId id) const {
  auto it = std::lower_bound(anchors.begin(), anchors.end(), id);
  if (it == anchors.end() || *it != id) return -1;
  return static_cast<int>(it - anchors.begin());
}

std::size_t RouteTables::fab_entry_count(std::uint32_t router_idx) const {
  std::size_t n = 0;
  for (std::uint32_t a = 0; a < anchors.size(); ++a)
    if (!fab_rows(router_idx, a).empty()) ++n;
  return n;
}

std::size_t RouteTables::prt_entry_count(std::uint32_t router_idx) const {
  std::size_t n = 0;
  for (std::uint32_t p = 0; p < prefixes.size(); ++p)
    if (!prt_rows(router_idx, p).empty()) ++n;
  return n;
}

std::size_t NdnFibs::fib_entry_count(std::uint32_t router_idx) const {
  std::size_t n = 0;
  for (std::uint32_t p = 0; p < prefixes.size(); ++p)
    if (!fib_rows(router_idx, p).empty()) ++n;
  return n;
}

namespace {

std::vector<Dist> run_matrix(const Topology& t, const std::vector<std::uint32_t>& sources,
                             const LinkCostFn& cost, bool parallel) {
  return parallel ? source_distance_matrix_omp(t, sources, cost)
                  : source_distance_matrix_serial(t, sources, cost);
}

void sort_hops(std::vector<NextHop>& hops) {
  std::sort(hops.begin(), hops.end(), [](const NextHop& x, const NextHop& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    return x.next < y.next;
  });
}

}  // namespace

RouteTables compute_routes(const Topology& t, const AnchorAssignment& a,
                           const LinkCostFn& cost, bool parallel) {
  RouteTables rt;
  rt.router_count = t.router_count();
  for (const auto& [anchor, ps] : a.bindings) rt.anchors.push_back(anchor);
  std::sort(rt.anchors.begin(), rt.anchors.end());
  for (RouterId anc : rt.anchors) rt.anchor_idxs.push_back(t.index_of(anc));

  rt.prefixes = PrefixIndex(a.all_prefixes());
  rt.prefix_anchor_sets.assign(rt.prefixes.size(), {});
  for (std::uint32_t p = 0; p < rt.prefixes.size(); ++p)
    for (RouterId anc : a.anchors_of(rt.prefixes.prefix(p)))
      rt.prefix_anchor_sets[p].push_back(static_cast<std::uint32_t>(rt.anchor_pos(anc)));

  rt.anchor_dist = run_matrix(t, rt.anchor_idxs, cost, parallel);

  const std::size_t nr = t.router_count();
  const std::size_t na = rt.anchors.size();
  auto link_cost = [&](const Topology::Neighbor& nb) { return cost(t.links()[nb.link_idx]); };

  // FAB rows: every neighbor that reaches the anchor, ranked (dist, id).
  rt.fab.inner = na;
  rt.fab.offsets.assign(nr * na + 1, 0);
  std::vector<NextHop> scratch;
  for (std::uint32_t r = 0; r < nr; ++r) {
    for (std::uint32_t ap = 0; ap < na; ++ap) {
      scratch.clear();
      for (const auto& nb : t.neighbors(r)) {
        Dist d = rt.dist_to_anchor(ap, nb.idx);
        if (std::isinf(d)) continue;
        scratch.push_back(NextHop{nb.id, nb.idx, link_cost(nb) + d});
      }
      sort_hops(scratch);
      rt.fab.offsets[r * na + ap + 1] = rt.fab.offsets[r * na + ap] + scratch.size();
      rt.fab.rows.insert(rt.fab.rows.end(), scratch.begin(), scratch.end());
    }
  }

  // PRT rows: anchors of each prefix ranked by distance from this router.
  const std::size_t np = rt.prefixes.size();
  rt.prt.inner = np;
  rt.prt.offsets.assign(nr * np + 1, 0);
  std::vector<RankedAnchor> pscratch;
  for (std::uint32_t r = 0; r < nr; ++r) {
    for (std::uint32_t p = 0; p < np; ++p) {
      pscratch.clear();
      for (std::uint32_t ap : rt.prefix_anchor_sets[p]) {
        Dist d = rt.dist_to_anchor(ap, r);
        if (std::isinf(d)) continue;
        pscratch.push_back(RankedAnchor{rt.anchors[ap], ap, d});
      }
      std::sort(pscratch.begin(), pscratch.end(),
                [](const RankedAnchor& x, const RankedAnchor& y) {
                  if (x.dist != y.dist) return x.dist < y.dist;
                  return x.anchor < y.anchor;
                });
      rt.prt.offsets[r * np + p + 1] = rt.prt.offsets[r * np + p] + pscratch.size();
      rt.prt.rows.insert(rt.prt.rows.end(), pscratch.begin(), pscratch.end());
    }
  }
  return rt;
}

NdnFibs build_ndn_fibs(const Topology& t, const AnchorAssignment& a,
                       const LinkCostFn& cost, bool parallel) {
  NdnFibs f;
  f.prefixes = PrefixIndex(a.all_prefixes());

  std::vector<RouterId> anchors;
  for (const auto& [anchor, ps] : a.bindings) anchors.push_back(anchor);
  std::sort(anchors.begin(), anchors.end());
  std::vector<std::uint32_t> anchor_idxs;
  for (RouterId anc : anchors) anchor_idxs.push_back(t.index_of(anc));

  std::vector<std::vector<std::uint32_t>> prefix_anchor_pos(f.prefixes.size());
  for (std::uint32_t p = 0; p < f.prefixes.size(); ++p)
    for (RouterId anc : a.anchors_of(f.prefixes.prefix(p))) {
      auto it = std::lower_bound(anchors.begin(), anchors.end(), anc);
      prefix_anchor_pos[p].push_back(static_cast<std::uint32_t>(it - anchors.begin()));
    }

  auto mat = run_matrix(t, anchor_idxs, cost, parallel);
  const std::size_t nr = t.router_count();
  const std::size_t np = f.prefixes.size();
  auto dist_at = [&](std::uint32_t ap, std::uint32_t ridx) { return mat[ap * nr + ridx]; };

  f.fib.inner = np;
  f.fib.offsets.assign(nr * np + 1, 0);

  // Row construction is independent per router; build chunks in parallel and
  // splice them serially so output stays identical for any thread count.
  std::vector<std::vector<NextHop>> per_router(nr);
  std::vector<std::vector<std::uint32_t>> per_router_len(nr);
  const std::int64_t nri = static_cast<std::int64_t>(nr);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t r = 0; r < nri; ++r) {
    auto& out = per_router[r];
    auto& lens = per_router_len[r];
    lens.assign(np, 0);
    std::vector<NextHop> scratch;
    for (std::uint32_t p = 0; p < np; ++p) {
      scratch.clear();
      for (const auto& nb : t.neighbors(static_cast<std::uint32_t>(r))) {
        Dist best = kInfDist;
        for (std::uint32_t ap : prefix_anchor_pos[p]) best = std::min(best, dist_at(ap, nb.idx));
        if (std::isinf(best)) continue;
        scratch.push_back(NextHop{nb.id, nb.idx, cost(t.links()[nb.link_idx]) + best});
      }
      sort_hops(scratch);
      lens[p] = static_cast<std::uint32_t>(scratch.size());
      out.insert(out.end(), scratch.begin(), scratch.end());
    }
  }
  for (std::uint32_t r = 0; r < nr; ++r) {
    for (std::uint32_t p = 0; p < np; ++p)
      f.fib.offsets[r * np + p + 1] = f.fib.offsets[r * np + p] + per_router_len[r][p];
    f.fib.rows.insert(f.fib.rows.end(), per_router[r].begin(), per_router[r].end());
  }
  return f;
}

namespace {

bool router_anchors_prefix(const AnchorAssignment& a, RouterId r, const NamePrefix& p) {
  auto it = a.bindings.find(r);
  if (it == a.bindings.end()) return false;
  return std::find(it->second.begin(), it->second.end(), p) != it->second.end();
}

}  // namespace

std::vector<RouterId> walk_fib_route(const Topology& t, const AnchorAssignment& a,
                                     const NdnFibs& fibs, std::uint32_t origin_idx,
                                     std::uint32_t prefix_id) {
  const NamePrefix& p = fibs.prefixes.prefix(prefix_id);
  std::vector<RouterId> route{t.id_of(origin_idx)};
  std::uint32_t cur = origin_idx;
  while (!router_anchors_prefix(a, t.id_of(cur), p)) {
    auto rows = fibs.fib_rows(cur, prefix_id);
    if (rows.empty() || route.size() > t.router_count()) return {};
    cur = rows[0].next_idx;
    route.push_back(t.id_of(cur));
  }
  return route;
}

std::vector<RouterId> walk_anchor_route(const Topology& t, const RouteTables& rt,
                                        std::uint32_t origin_idx, std::uint32_t prefix_id) {
  auto prow = rt.prt_rows(origin_idx, prefix_id);
  if (prow.empty()) return {};
  const std::uint32_t ap = prow[0].anchor_idx;
  const std::uint32_t anchor_node = rt.anchor_idxs[ap];
  std::vector<RouterId> route{t.id_of(origin_idx)};
  std::uint32_t cur = origin_idx;
  while (cur != anchor_node) {
    auto rows = rt.fab_rows(cur, ap);
    if (rows.empty() || route.size() > t.router_count()) return {};
    cur = rows[0].next_idx;
    route.push_back(t.id_of(cur));
  }
  return route;
}

PathReport verify_path_equivalence(const Topology& t, const AnchorAssignment& a,
                                   const RouteTables& rt, const NdnFibs& fibs,
                                   const std::vector<RouterId>& origins) {
  PathReport rep;
  for (RouterId origin : origins) {
    std::uint32_t oi = t.index_of(origin);
    for (std::uint32_t p = 0; p < rt.prefixes.size(); ++p) {
      ++rep.pairs_checked;
      bool multi = rt.prefix_anchor_sets[p].size() > 1;
      if (multi)
        ++rep.multi_homed_pairs;
      else
        ++rep.single_anchor_pairs;
      auto via_prefix = walk_fib_route(t, a, fibs, oi, p);
      auto via_anchor = walk_anchor_route(t, rt, oi, p);
      bool diverged = multi ? via_prefix.size() != via_anchor.size() : via_prefix != via_anchor;
      if (diverged)
        rep.divergences.push_back(
            PathDivergence{origin, rt.prefixes.prefix(p), multi, via_prefix, via_anchor});
    }
  }
  return rep;
}

PathReport verify_path_equivalence(const Topology& t, const AnchorAssignment& a,
                                   const LinkCostFn& cost,
                                   const std::vector<RouterId>& origins) {
  RouteTables rt = compute_routes(t, a, cost);
  NdnFibs fibs = build_ndn_fibs(t, a, cost);
  return verify_path_equivalence(t, a, rt, fibs, origins);
}

MultihomingVerdict multihoming_advantage(const Topology& t, const AnchorAssignment& a,
                                         const LinkCostFn& cost,
                                         std::optional<std::uint32_t> failed_link,
                                         RouterId origin, RouterId relay,
                                         RouterId bound_anchor, const NamePrefix& prefix) {
  auto anchors = a.anchors_of(prefix);
  if (anchors.size() < 2)
    throw InvalidScenarioError("prefix " + prefix.str() + " is not multi-homed");
  if (std::find(anchors.begin(), anchors.end(), bound_anchor) == anchors.end())
    throw InvalidScenarioError("router " + std::to_string(bound_anchor) +
                               " is not an anchor of " + prefix.str());

  // The relay must lie on origin's pre-failure route to the bound anchor.
  {
    RouteTables rt = compute_routes(t, a, cost);
    int ap = rt.anchor_pos(bound_anchor);
    std::uint32_t cur = t.index_of(origin);
    const std::uint32_t target = t.index_of(bound_anchor);
    bool on_path = (origin == relay);
    std::size_t guard = 0;
    while (cur != target && guard++ <= t.router_count()) {
      auto rows = rt.fab_rows(cur, static_cast<std::uint32_t>(ap));
      if (rows.empty()) break;
      cur = rows[0].next_idx;
      if (t.id_of(cur) == relay) on_path = true;
    }
    if (!on_path)
      throw InvalidScenarioError("relay " + std::to_string(relay) +
                                 " is not on the route from " + std::to_string(origin) +
                                 " to anchor " + std::to_string(bound_anchor));
  }

  Topology post = failed_link ? t.without_link(*failed_link) : t;
  std::vector<std::uint32_t> sources{post.index_of(relay), post.index_of(origin)};
  auto mat = source_distance_matrix_serial(post, sources, cost);
  const std::size_t n = post.router_count();
  auto from_relay = [&](RouterId x) { return mat[post.index_of(x)]; };
  auto from_origin = [&](RouterId x) { return mat[n + post.index_of(x)]; };

  MultihomingVerdict v;
  v.detour_to_bound = from_relay(bound_anchor);

  // Nearest anchor of the prefix to the relay, post-failure (may be the
  // bound anchor itself); ties to lower id.
  RouterId aj = 0;
  Dist best = kInfDist;
  for (RouterId anc : anchors) {
    Dist d = from_relay(anc);
    if (d < best || (d == best && best < kInfDist && anc < aj)) {
      best = d;
      aj = anc;
    }
  }
  if (std::isinf(best))
    throw InvalidScenarioError("no anchor of " + prefix.str() + " reachable from relay");
  v.nearest_alternative = aj;
  v.to_alternative = best;
  v.relay_to_origin = from_relay(origin);
  v.origin_to_alternative = from_origin(aj);

  if (!std::isinf(v.detour_to_bound)) {
    if (v.to_alternative < v.detour_to_bound) v.condition = Advantage::ShorterDetour;
  } else {
    if (v.to_alternative < v.relay_to_origin + v.origin_to_alternative)
      v.condition = Advantage::OnlyRoute;
  }
  return v;
}

RouteTables inject_inconsistency(const RouteTables& rt, const Topology& t,
                                 const LinkCostFn& cost, std::uint64_t seed,
                                 double severity) {
  RouteTables out = rt;
  if (severity <= 0.0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const std::size_t na = out.anchors.size();
  for (std::uint32_t r = 0; r < out.router_count; ++r) {
    const auto& nbrs = t.neighbors(r);
    for (std::uint32_t ap = 0; ap < na; ++ap) {
      auto rows = out.fab.at_mut(r, ap);
      for (auto& row : rows) {
        if (coin(rng) >= severity) continue;
        bool reroute = (rng() & 1) != 0;
        if (reroute && nbrs.size() > 1) {
          // Point the row at a different neighbor; keep the stored distance
          // consistent with that neighbor's true distance so it stays finite
          // whenever possible.
          std::uint32_t pick =
              static_cast<std::uint32_t>(rng() % (nbrs.size() - 1));
          std::uint32_t k = 0;
          const Topology::Neighbor* chosen = nullptr;
          for (const auto& nb : nbrs) {
            if (nb.id == row.next) continue;
            if (k++ == pick) {
              chosen = &nb;
              break;
            }
          }
          if (chosen) {
            Dist d = rt.dist_to_anchor(ap, chosen->idx);
            if (!std::isinf(d)) {
              row.next = chosen->id;
              row.next_idx = chosen->idx;
              row.dist = cost(t.links()[chosen->link_idx]) + d;
              continue;
            }
          }
        }
        // Stale-distance noise: bounded, integral, keeps distance >= 1.
        double noise = static_cast<double>(static_cast<std::int64_t>(rng() % 7) - 3);
        row.dist = std::max(1.0, row.dist + noise);
      }
    }
  }
  return out;
}

std::vector<TableLoop> find_routing_table_loops(const Topology& t, const RouteTables& rt) {
  std::vector<TableLoop> loops;
  const std::size_t na = rt.anchors.size();
  for (std::uint32_t ap = 0; ap < na; ++ap) {
    const std::uint32_t anchor_node = rt.anchor_idxs[ap];
    // next[r]: rank-1 successor toward this anchor, -1 when none.
    std::vector<std::int64_t> next(rt.router_count, -1);
    for (std::uint32_t r = 0; r < rt.router_count; ++r) {
      if (r == anchor_node) continue;
      auto rows = rt.fab_rows(r, ap);
      if (!rows.empty()) next[r] = rows[0].next_idx;
    }
    std::vector<std::uint8_t> state(rt.router_count, 0);  // 0 unseen, 1 on stack, 2 done
    for (std::uint32_t start = 0; start < rt.router_count; ++start) {
      if (state[start] != 0) continue;
      std::vector<std::uint32_t> stack;
      std::uint32_t cur = start;
      while (true) {
        if (state[cur] == 1) {
          // Found a cycle: extract it from the stack.
          TableLoop loop;
          loop.anchor = rt.anchors[ap];
          auto it = std::find(stack.begin(), stack.end(), cur);
          for (; it != stack.end(); ++it) loop.cycle.push_back(t.id_of(*it));
          loops.push_back(std::move(loop));
          break;
        }
        if (state[cur] == 2 || next[cur] < 0 || cur == anchor_node) break;
        state[cur] = 1;
        stack.push_back(cur);
        cur = static_cast<std::uint32_t>(next[cur]);
      }
      for (std::uint32_t v : stack) state[v] = 2;
      state[start] = 2;
    }
  }
  return loops;
}

}  // namespace ramp
