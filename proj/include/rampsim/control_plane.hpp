// Centralized route computation (standing in for a name-based routing
// protocol) plus the analyzers: path equivalence between per-prefix and
// per-anchor forwarding, multi-homing advantage conditions, and the
// table-inconsistency injector used by loop-freedom fuzzing.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rampsim/route_tables.hpp"
#include "rampsim/topology.hpp"

namespace ramp {

// Shortest-path matrix rows for the given sources (dense indices).
// The _omp variant parallelizes across sources and produces bit-identical
// output to the serial one; dist[src_pos * R + router_idx].
std::vector<Dist> source_distance_matrix_serial(const Topology& t,
                                                const std::vector<std::uint32_t>& sources,
                                                const LinkCostFn& cost);
std::vector<Dist> source_distance_matrix_omp(const Topology& t,
                                             const std::vector<std::uint32_t>& sources,
                                             const LinkCostFn& cost);

// Builds every router's FAB and PRT. Ranks are best-first with equal-cost
// ties broken by lower router id; the same tie-break is shared with
// build_ndn_fibs so route walks can be compared exactly.
RouteTables compute_routes(const Topology& t, const AnchorAssignment& a,
                           const LinkCostFn& cost, bool parallel = true);
inline RouteTables compute_routes_serial(const Topology& t, const AnchorAssignment& a,
                                         const LinkCostFn& cost) {
  return compute_routes(t, a, cost, false);
}

// Per-prefix FIBs for the baseline plane; the distance to a prefix is the
// minimum over its anchors.
NdnFibs build_ndn_fibs(const Topology& t, const AnchorAssignment& a,
                       const LinkCostFn& cost, bool parallel = true);
inline NdnFibs build_ndn_fibs_serial(const Topology& t, const AnchorAssignment& a,
                                     const LinkCostFn& cost) {
  return build_ndn_fibs(t, a, cost, false);
}

// Rank-1 route walks. Both return the sequence of router ids starting at
// origin; empty when the walk dead-ends or exceeds the router count, which
// cannot happen on consistent tables.
std::vector<RouterId> walk_fib_route(const Topology& t, const AnchorAssignment& a,
                                     const NdnFibs& fibs, std::uint32_t origin_idx,
                                     std::uint32_t prefix_id);
std::vector<RouterId> walk_anchor_route(const Topology& t, const RouteTables& rt,
                                        std::uint32_t origin_idx, std::uint32_t prefix_id);

struct PathDivergence {
  RouterId origin;
  NamePrefix prefix;
  bool multi_homed;
  std::vector<RouterId> prefix_route;
  std::vector<RouterId> anchor_route;
};

struct PathReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t single_anchor_pairs = 0;
  std::uint64_t multi_homed_pairs = 0;
  // Single-anchor prefixes whose routes differ at all, plus multi-homed
  // prefixes whose routes differ in length.
  std::vector<PathDivergence> divergences;
  bool ok() const { return divergences.empty(); }
};

// Compares, for every (origin, prefix), the route implied by per-prefix FIB
// entries with the route implied by PRT binding + FAB forwarding.
PathReport verify_path_equivalence(const Topology& t, const AnchorAssignment& a,
                                   const LinkCostFn& cost,
                                   const std::vector<RouterId>& origins);
PathReport verify_path_equivalence(const Topology& t, const AnchorAssignment& a,
                                   const RouteTables& rt, const NdnFibs& fibs,
                                   const std::vector<RouterId>& origins);

class InvalidScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Advantage { None, ShorterDetour, OnlyRoute };

struct MultihomingVerdict {
  Advantage condition = Advantage::None;
  RouterId nearest_alternative = 0;  // a_j
  Dist detour_to_bound = kInfDist;   // relay -> bound anchor, post-failure
  Dist to_alternative = kInfDist;    // relay -> a_j, post-failure
  Dist relay_to_origin = kInfDist;
  Dist origin_to_alternative = kInfDist;
};

// Evaluates whether per-prefix forwarding could beat per-anchor forwarding
// at `relay` after `failed_link` goes down, for a multi-homed prefix bound
// to `bound_anchor` by `origin`. Throws InvalidScenarioError when relay is
// not on origin's route to the bound anchor.
MultihomingVerdict multihoming_advantage(const Topology& t, const AnchorAssignment& a,
                                         const LinkCostFn& cost,
                                         std::optional<std::uint32_t> failed_link,
                                         RouterId origin, RouterId relay,
                                         RouterId bound_anchor, const NamePrefix& prefix);

// Deterministically perturbs a fraction (severity in [0,1]) of FAB rows:
// either points a row at a different neighbor (distance re-derived from that
// neighbor's true distance) or applies bounded integer staleness noise.
RouteTables inject_inconsistency(const RouteTables& rt, const Topology& t,
                                 const LinkCostFn& cost, std::uint64_t seed,
                                 double severity);

struct TableLoop {
  RouterId anchor;
  std::vector<RouterId> cycle;
};

// Cycle-walk oracle: follows rank-1 FAB next hops toward each anchor from
// every router and reports any cycles.
std::vector<TableLoop> find_routing_table_loops(const Topology& t, const RouteTables& rt);

}  // namespace ramp
