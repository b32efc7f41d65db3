// Scenario configuration (workload shape, consumer behavior, failures) and
// the deterministic topology generators used for bundled and fuzz inputs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rampsim/topology.hpp"

namespace ramp {

enum class Mode { Ramp, Ndn };
const char* to_string(Mode m);

struct LinkFailureEvent {
  double time_s = 0;
  RouterId a = 0, b = 0;
};

// Loaded from the scenario file; run-specific knobs (mode, rate, seed,
// horizon, cache) arrive separately.
struct ScenarioConfig {
  std::vector<RouterId> consumers;
  double zipf_alpha = 0.7;
  std::uint32_t cos_per_prefix = 10;
  double rto_s = 1.0;
  std::uint32_t max_retransmissions = 3;
  double sample_interval_s = 0.1;
  double warmup_frac = 0.1;
  unsigned aid_bits = 32;
  double lsat_idle_ttl_s = 0;  // 0 -> 10x rto
  double pit_lifetime_s = 2.0;
  std::vector<LinkFailureEvent> link_failures;
  bool refresh_tables_on_failure = true;

  double lsat_ttl() const { return lsat_idle_ttl_s > 0 ? lsat_idle_ttl_s : 10.0 * rto_s; }

  // `<key> <value>` lines plus repeatable `consumer` / `fail_link` records.
  static ScenarioConfig load(std::istream& in, const std::string& origin = "<scenario>");
  static ScenarioConfig load_file(const std::string& path);
  void save(std::ostream& out) const;

  // Field-level validation against the topology; throws ConfigError.
  void validate(const Topology& topo) const;
};

struct RunConfig {
  Mode mode = Mode::Ramp;
  double rate_per_consumer = 100;  // requests per second per consumer router
  std::uint64_t seed = 1;
  double horizon_s = 30;
  std::size_t cache_capacity = 0;  // per-router content store, 0 = none

  void validate() const;
};

// Parses "none" or "lru:<N>".
std::size_t parse_cache_mode(const std::string& text);

// Random connected graph: spanning tree plus `extra_links` chords.
Topology random_connected_topology(std::uint32_t nodes, std::uint32_t extra_links,
                                   std::uint64_t seed, double delay_s = 0.03,
                                   double rate_bps = 1e10);

struct SyntheticBundle {
  Topology topo;
  AnchorAssignment anchors;
  ScenarioConfig scenario;
};

// Core-and-leaves graph shaped to give short average paths, with anchors and
// consumer routers drawn disjointly. Prefixes are named /a<j>/p<k>.
SyntheticBundle generate_synthetic_bundle(std::uint32_t nodes, std::uint32_t links,
                                          std::uint32_t anchor_count,
                                          std::uint32_t prefixes_per_anchor,
                                          std::uint32_t consumer_count, std::uint64_t seed);

// Small randomized case for loop-freedom fuzzing: random connected graph,
// random anchors, random consumer routers.
struct FuzzParams {
  std::uint32_t nodes = 30;
  std::uint32_t extra_links = 12;
  std::uint32_t anchor_count = 3;
  std::uint32_t prefixes_per_anchor = 5;
  std::uint32_t consumer_count = 5;
};
SyntheticBundle make_fuzz_case(const FuzzParams& p, std::uint64_t seed);

}  // namespace ramp
