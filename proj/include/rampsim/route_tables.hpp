// Forwarding state computed by the control plane: per-router anchor tables
// (FAB), prefix resolution tables (PRT), and the per-prefix FIBs used by the
// NDN-style baseline.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rampsim/names.hpp"
#include "rampsim/topology.hpp"

namespace ramp {

using Dist = double;
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::infinity();

struct NextHop {
  RouterId next = 0;
  std::uint32_t next_idx = 0;
  Dist dist = kInfDist;  // cost to the target via this neighbor
};

struct RankedAnchor {
  RouterId anchor = 0;
  std::uint32_t anchor_idx = 0;  // into RouteTables::anchors
  Dist dist = kInfDist;          // shortest-path cost from this router
};

// Flattened ranked-row storage: rows(outer, inner) spans a contiguous chunk.
template <class Row>
struct FlatRows {
  std::vector<std::uint64_t> offsets;  // size outer*inner + 1
  std::vector<Row> rows;
  std::uint64_t inner = 0;

  std::span<const Row> at(std::uint64_t outer_i, std::uint64_t inner_i) const {
    std::uint64_t k = outer_i * inner + inner_i;
    return {rows.data() + offsets[k], rows.data() + offsets[k + 1]};
  }
  std::span<Row> at_mut(std::uint64_t outer_i, std::uint64_t inner_i) {
    std::uint64_t k = outer_i * inner + inner_i;
    return {rows.data() + offsets[k], rows.data() + offsets[k + 1]};
  }
};

struct RouteTables {
  std::vector<RouterId> anchors;             // sorted anchor ids
  std::vector<std::uint32_t> anchor_idxs;    // dense topology indices, same order
  PrefixIndex prefixes;
  std::vector<std::vector<std::uint32_t>> prefix_anchor_sets;  // prefix id -> anchor positions

  // dist[a_pos * R + r_idx]: shortest-path cost anchor <-> router.
  std::vector<Dist> anchor_dist;
  std::size_t router_count = 0;

  // FAB: per (router, anchor position) ranked next hops, best first.
  FlatRows<NextHop> fab;
  // PRT: per (router, prefix id) ranked anchors, nearest first.
  FlatRows<RankedAnchor> prt;

  Dist dist_to_anchor(std::uint32_t anchor_pos, std::uint32_t router_idx) const {
    return anchor_dist[static_cast<std::size_t>(anchor_pos) * router_count + router_idx];
  }
  std::span<const NextHop> fab_rows(std::uint32_t router_idx, std::uint32_t anchor_pos) const {
    return fab.at(router_idx, anchor_pos);
  }
  std::span<const RankedAnchor> prt_rows(std::uint32_t router_idx, std::uint32_t prefix_id) const {
    return prt.at(router_idx, prefix_id);
  }

  // Position of an anchor id in `anchors`, or -1.
  int anchor_pos(RouterId id) const;

  // Table-size views used by metrics and tests.
  std::size_t fab_entry_count(std::uint32_t router_idx) const;  // anchors with >=1 next hop
  std::size_t prt_entry_count(std::uint32_t router_idx) const;  // prefixes with >=1 anchor
};

struct NdnFibs {
  PrefixIndex prefixes;
  // per (router, prefix id) ranked next hops, best first.
  FlatRows<NextHop> fib;

  std::span<const NextHop> fib_rows(std::uint32_t router_idx, std::uint32_t prefix_id) const {
    return fib.at(router_idx, prefix_id);
  }
  std::size_t fib_entry_count(std::uint32_t router_idx) const;
};

}  // namespace ramp
