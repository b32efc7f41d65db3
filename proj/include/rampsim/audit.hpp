// Trace auditor: replays a simulation log line by line and checks the
// forwarding invariants that the protocol promises. Used by the fuzz
// harness, the acceptance suite, and `rampsim verify loops`.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ramp {

class TraceAuditor {
public:
  struct Report {
    std::uint64_t requests = 0;
    std::uint64_t tags = 0;
    std::uint64_t delivered = 0;
    std::uint64_t notified = 0;
    std::uint64_t dropped_tags = 0;
    std::uint64_t in_flight = 0;
    std::uint64_t interest_forwards = 0;
    std::uint64_t loop_error_forwards = 0;   // E_FWD code=loop lines
    std::uint64_t loop_error_notified = 0;   // E_NOTIFY code=loop lines
    // Loop-freedom breaches: a stated distance that failed to strictly
    // decrease, or one Interest readmitted on the same flow state. Must be
    // empty in every run, consistent tables or not.
    std::vector<std::string> loop_violations;
    // Path-consistency breaches: broken reverse paths, discontinuous
    // forwarding chains, double terminals, time regressions. Must be empty
    // under consistent tables; stale in-flight traffic meeting recycled
    // labels can trip these when tables were deliberately corrupted.
    std::vector<std::string> path_violations;
    bool ok() const { return loop_violations.empty() && path_violations.empty(); }
    bool loop_free() const { return loop_violations.empty(); }
  };

  void feed_line(std::string_view line);
  Report finish();

private:
  struct TagState {
    std::vector<std::uint32_t> ipath;  // origin router then each forward target
    // (router, flow label) per admission; a duplicate means one Interest was
    // admitted twice on the same flow state.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> admissions;
    std::vector<double> dists;  // stated distance per forward (ramp)
    bool has_dists = false;
    std::vector<std::uint32_t> dpath;  // data forwarding routers
    bool delivered = false;
    bool notified = false;
    std::uint32_t deliver_router = 0;
    std::uint32_t drops = 0;
    bool discontinuous = false;
  };

  TagState& state(std::uint64_t tag) { return tags_[tag]; }

  std::unordered_map<std::uint64_t, TagState> tags_;
  Report report_;
  double last_time_ = -1.0;
  std::uint64_t line_no_ = 0;
};

}  // namespace ramp
