#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rampsim/control_plane.hpp"
#include "rampsim/scenario.hpp"

using namespace ramp;

namespace {

Topology line3() {
  Topology t;
  t.add_router(1);  // x
  t.add_router(2);  // y
  t.add_router(3);  // z
  t.add_link(1, 2, 0.03, 1e10);
  t.add_link(2, 3, 0.03, 1e10);
  return t;
}

AnchorAssignment random_anchors(const Topology& t, std::uint32_t count,
                                std::uint32_t prefixes_each, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RouterId> ids(t.routers());
  std::shuffle(ids.begin(), ids.end(), rng);
  AnchorAssignment aa;
  for (std::uint32_t j = 0; j < count; ++j)
    for (std::uint32_t k = 0; k < prefixes_each; ++k)
      aa.add(ids[j], Name::of({"a" + std::to_string(j), "p" + std::to_string(k)}));
  return aa;
}

}  // namespace

TEST_CASE("three-router line: unique path tables") {
  Topology t = line3();
  AnchorAssignment aa;
  aa.add(3, Name::parse("/p"));
  RouteTables rt = compute_routes(t, aa, hop_count_cost());

  // FAB at x for anchor z: single next hop y at distance 2.
  auto rows = rt.fab_rows(t.index_of(1), 0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].next == 2);
  CHECK(rows[0].dist == 2.0);

  // PRT at x for /p: anchor z at distance 2.
  auto prow = rt.prt_rows(t.index_of(1), 0);
  REQUIRE(prow.size() == 1);
  CHECK(prow[0].anchor == 3);
  CHECK(prow[0].dist == 2.0);
}

TEST_CASE("table entry counts: prefixes everywhere, anchors reachable") {
  SyntheticBundle b = generate_synthetic_bundle(40, 55, 4, 3, 6, 5);
  RouteTables rt = compute_routes(b.topo, b.anchors, hop_count_cost());
  for (std::uint32_t r = 0; r < b.topo.router_count(); ++r) {
    CHECK(rt.prt_entry_count(r) == 12);
    CHECK(rt.fab_entry_count(r) == 4);
  }
}

TEST_CASE("fab distances match the all-pairs oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Topology t = random_connected_topology(30, 12, seed);
    AnchorAssignment aa = random_anchors(t, 3, 2, seed + 100);
    RouteTables rt = compute_routes(t, aa, hop_count_cost());
    auto fw = oracle::floyd_warshall(t, hop_count_cost());
    const std::size_t n = t.router_count();
    for (std::uint32_t ap = 0; ap < rt.anchors.size(); ++ap) {
      std::uint32_t ai = t.index_of(rt.anchors[ap]);
      for (std::uint32_t r = 0; r < n; ++r) {
        CHECK(rt.dist_to_anchor(ap, r) == fw[ai * n + r]);
        for (const auto& hop : rt.fab_rows(r, ap)) {
          CHECK(hop.dist == 1.0 + fw[hop.next_idx * n + ai]);
          // next hops are true neighbors
          bool is_neighbor = false;
          for (const auto& nb : t.neighbors(r)) is_neighbor |= nb.id == hop.next;
          CHECK(is_neighbor);
        }
        // ranks best-first
        auto rows = rt.fab_rows(r, ap);
        for (std::size_t i = 1; i < rows.size(); ++i)
          CHECK((rows[i - 1].dist < rows[i].dist ||
                 (rows[i - 1].dist == rows[i].dist && rows[i - 1].next < rows[i].next)));
      }
    }
    // PRT rank order non-decreasing in distance
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t p = 0; p < rt.prefixes.size(); ++p) {
        auto rows = rt.prt_rows(r, p);
        for (std::size_t i = 1; i < rows.size(); ++i)
          CHECK(rows[i - 1].dist <= rows[i].dist);
      }
  }
}

TEST_CASE("serial and omp kernels produce identical matrices") {
  Topology t = random_connected_topology(60, 40, 9);
  std::vector<std::uint32_t> sources{0, 5, 17, 31, 59};
  auto a = source_distance_matrix_serial(t, sources, hop_count_cost());
  auto b = source_distance_matrix_omp(t, sources, hop_count_cost());
  CHECK(a == b);

  AnchorAssignment aa = random_anchors(t, 4, 3, 77);
  NdnFibs fs = build_ndn_fibs_serial(t, aa, hop_count_cost());
  NdnFibs fp = build_ndn_fibs(t, aa, hop_count_cost(), true);
  REQUIRE(fs.fib.offsets == fp.fib.offsets);
  for (std::size_t i = 0; i < fs.fib.rows.size(); ++i) {
    CHECK(fs.fib.rows[i].next == fp.fib.rows[i].next);
    CHECK(fs.fib.rows[i].dist == fp.fib.rows[i].dist);
  }
}

TEST_CASE("ndn fib equals per-prefix multi-source shortest paths") {
  // single-anchor prefix: fib rows equal the anchor's fab rows
  {
    SyntheticBundle b = generate_synthetic_bundle(25, 34, 3, 2, 4, 3);
    RouteTables rt = compute_routes(b.topo, b.anchors, hop_count_cost());
    NdnFibs fibs = build_ndn_fibs(b.topo, b.anchors, hop_count_cost());
    for (std::uint32_t p = 0; p < rt.prefixes.size(); ++p) {
      REQUIRE(rt.prefix_anchor_sets[p].size() == 1);
      std::uint32_t ap = rt.prefix_anchor_sets[p][0];
      for (std::uint32_t r = 0; r < b.topo.router_count(); ++r) {
        auto want = rt.fab_rows(r, ap);
        auto got = fibs.fib_rows(r, p);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
          CHECK(got[i].next == want[i].next);
          CHECK(got[i].dist == want[i].dist);
        }
      }
    }
  }
  // multi-homed prefix: distance is the min over anchors
  {
    Topology t = random_connected_topology(20, 10, 4);
    AnchorAssignment aa;
    NamePrefix mh = Name::parse("/mh");
    aa.add(2, mh);
    aa.add(9, mh);
    NdnFibs fibs = build_ndn_fibs(t, aa, hop_count_cost());
    auto fw = oracle::floyd_warshall(t, hop_count_cost());
    const std::size_t n = t.router_count();
    std::uint32_t i2 = t.index_of(2), i9 = t.index_of(9);
    for (std::uint32_t r = 0; r < n; ++r) {
      for (const auto& hop : fibs.fib_rows(r, 0)) {
        double want = 1.0 + std::min(fw[hop.next_idx * n + i2], fw[hop.next_idx * n + i9]);
        CHECK(hop.dist == want);
      }
    }
  }
}

TEST_CASE("path equivalence: two-anchor example") {
  // y anchors three prefixes, z anchors three, one shared (multi-homed).
  Topology t;
  for (RouterId r : {1u, 2u, 3u, 4u, 5u}) t.add_router(r);  // p q s y z
  t.add_link(1, 2, 0.03, 1e10);
  t.add_link(2, 4, 0.03, 1e10);
  t.add_link(1, 3, 0.03, 1e10);
  t.add_link(3, 5, 0.03, 1e10);
  t.add_link(2, 3, 0.03, 1e10);
  AnchorAssignment aa;
  aa.add(4, Name::parse("/pfx/p"));
  aa.add(4, Name::parse("/pfx/q"));
  aa.add(4, Name::parse("/pfx/r"));
  aa.add(5, Name::parse("/pfx/a"));
  aa.add(5, Name::parse("/pfx/c"));
  aa.add(5, Name::parse("/pfx/p"));  // multi-homed

  PathReport rep = verify_path_equivalence(t, aa, hop_count_cost(), t.routers());
  CHECK(rep.ok());
  CHECK(rep.single_anchor_pairs == 4 * 5);
  CHECK(rep.multi_homed_pairs == 1 * 5);
}

TEST_CASE("path equivalence: line topology and random graphs") {
  {
    Topology t = line3();
    AnchorAssignment aa;
    aa.add(3, Name::parse("/p"));
    CHECK(verify_path_equivalence(t, aa, hop_count_cost(), t.routers()).ok());
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Topology t = random_connected_topology(20, 8, seed);
    AnchorAssignment aa = random_anchors(t, 3, 2, seed * 31 + 7);
    PathReport rep = verify_path_equivalence(t, aa, hop_count_cost(), t.routers());
    CHECK(rep.divergences.empty());
  }
}

TEST_CASE("multihoming advantage verdicts") {
  Topology t;
  for (RouterId r : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u}) t.add_router(r);
  t.add_link(0, 1, 0.03, 1e10);  // o-r
  t.add_link(1, 2, 0.03, 1e10);  // r-p
  t.add_link(2, 3, 0.03, 1e10);  // p-ai
  t.add_link(1, 5, 0.03, 1e10);  // r-x
  t.add_link(5, 6, 0.03, 1e10);  // x-y
  t.add_link(6, 3, 0.03, 1e10);  // y-ai  (detour of length 3)
  t.add_link(1, 7, 0.03, 1e10);  // r-w
  t.add_link(7, 4, 0.03, 1e10);  // w-aj  (alternative at distance 2)
  AnchorAssignment aa;
  NamePrefix mh = Name::parse("/mh");
  aa.add(3, mh);
  aa.add(4, mh);
  std::uint32_t rp = static_cast<std::uint32_t>(t.link_between(1, 2));

  SUBCASE("intact topology: no advantage") {
    auto v = multihoming_advantage(t, aa, hop_count_cost(), std::nullopt, 0, 1, 3, mh);
    CHECK(v.condition == Advantage::None);
  }
  SUBCASE("failure with a nearer alternative anchor") {
    auto v = multihoming_advantage(t, aa, hop_count_cost(), rp, 0, 1, 3, mh);
    CHECK(v.condition == Advantage::ShorterDetour);
    CHECK(v.nearest_alternative == 4);
    CHECK(v.detour_to_bound == 3.0);
    CHECK(v.to_alternative == 2.0);
  }
  SUBCASE("equal-cost detour: strict inequality fails") {
    // Make the alternative exactly as far as the detour.
    Topology t2 = t.without_link(static_cast<std::uint32_t>(t.link_between(7, 4)));
    t2.add_router(8);
    t2.add_link(7, 8, 0.03, 1e10);
    t2.add_link(8, 4, 0.03, 1e10);  // r-w-w2-aj = 3
    auto v = multihoming_advantage(t2, aa, hop_count_cost(),
                                   static_cast<std::uint32_t>(t2.link_between(1, 2)), 0, 1, 3,
                                   mh);
    CHECK(v.condition == Advantage::None);
  }
  SUBCASE("bound anchor unreachable: alternative beats the return trip") {
    Topology t3 = t.without_link(static_cast<std::uint32_t>(t.link_between(6, 3)));
    auto v = multihoming_advantage(t3, aa, hop_count_cost(),
                                   static_cast<std::uint32_t>(t3.link_between(1, 2)), 0, 1, 3,
                                   mh);
    CHECK(v.condition == Advantage::OnlyRoute);
  }
  SUBCASE("relay off the route is rejected") {
    CHECK_THROWS_AS(multihoming_advantage(t, aa, hop_count_cost(), rp, 0, 7, 3, mh),
                    InvalidScenarioError);
  }
  SUBCASE("single-anchor prefix is rejected") {
    AnchorAssignment single;
    single.add(3, Name::parse("/solo"));
    CHECK_THROWS_AS(multihoming_advantage(t, single, hop_count_cost(), rp, 0, 1, 3,
                                          Name::parse("/solo")),
                    InvalidScenarioError);
  }
}

TEST_CASE("inject_inconsistency: identity, determinism, loops") {
  Topology ring;
  for (RouterId r : {0u, 1u, 2u, 3u}) ring.add_router(r);
  ring.add_link(0, 1, 0.03, 1e10);
  ring.add_link(1, 2, 0.03, 1e10);
  ring.add_link(2, 3, 0.03, 1e10);
  ring.add_link(3, 0, 0.03, 1e10);
  AnchorAssignment aa;
  aa.add(0, Name::parse("/p"));
  RouteTables rt = compute_routes(ring, aa, hop_count_cost());

  auto rows_equal = [](const RouteTables& a, const RouteTables& b) {
    if (a.fab.offsets != b.fab.offsets) return false;
    for (std::size_t i = 0; i < a.fab.rows.size(); ++i)
      if (a.fab.rows[i].next != b.fab.rows[i].next || a.fab.rows[i].dist != b.fab.rows[i].dist)
        return false;
    return true;
  };

  SUBCASE("severity 0 leaves tables unchanged") {
    RouteTables same = inject_inconsistency(rt, ring, hop_count_cost(), 99, 0.0);
    CHECK(rows_equal(rt, same));
  }
  SUBCASE("fixed seed reproduces identical perturbations") {
    RouteTables a = inject_inconsistency(rt, ring, hop_count_cost(), 5, 0.7);
    RouteTables b = inject_inconsistency(rt, ring, hop_count_cost(), 5, 0.7);
    CHECK(rows_equal(a, b));
    RouteTables c = inject_inconsistency(rt, ring, hop_count_cost(), 6, 0.7);
    CHECK_FALSE(rows_equal(a, c));
  }
  SUBCASE("full severity on a ring produces a routing-table loop") {
    CHECK(find_routing_table_loops(ring, rt).empty());
    bool found = false;
    for (std::uint64_t seed = 0; seed < 10 && !found; ++seed) {
      RouteTables bad = inject_inconsistency(rt, ring, hop_count_cost(), seed, 1.0);
      auto loops = find_routing_table_loops(ring, bad);
      for (const auto& l : loops) {
        CHECK(l.anchor == 0);
        CHECK(l.cycle.size() >= 2);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("topology and anchor file parsing") {
  std::istringstream good("# demo\nnode 1\nnode 2\nlink 1 2 30 10000\n");
  Topology t = Topology::load(good, "demo");
  CHECK(t.router_count() == 2);
  CHECK(t.links().size() == 1);
  CHECK(t.links()[0].delay_s == doctest::Approx(0.03));
  CHECK(t.links()[0].rate_bps == doctest::Approx(1e10));

  std::istringstream self("node 1\nlink 1 1 30 10000\n");
  CHECK_THROWS_AS(Topology::load(self, "demo"), ConfigError);
  std::istringstream dup("node 1\nnode 2\nlink 1 2 30 10000\nlink 2 1 30 10000\n");
  CHECK_THROWS_AS(Topology::load(dup, "demo"), ConfigError);
  std::istringstream junk("frob 1\n");
  CHECK_THROWS_AS(Topology::load(junk, "demo"), ConfigError);

  std::istringstream anch("anchor 1 /p /q\nanchor 2 /p\n");
  AnchorAssignment aa = AnchorAssignment::load(anch, t, "demo");
  CHECK(aa.all_prefixes().size() == 2);
  CHECK(aa.anchors_of(Name::parse("/p")) == std::vector<RouterId>{1, 2});
  std::istringstream unknown("anchor 9 /p\n");
  CHECK_THROWS_AS(AnchorAssignment::load(unknown, t, "demo"), ConfigError);
}
