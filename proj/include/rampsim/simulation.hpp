// Deterministic discrete-event engine: FIFO links with serialization and
// propagation delay, consumer applications with retransmission timers,
// periodic table sampling, and scripted link failures. One run is strictly
// single-threaded and a pure function of (scenario, run config, seed);
// callers may execute many runs in parallel.
#pragma once

#include <memory>
#include <optional>

#include "rampsim/audit.hpp"
#include "rampsim/control_plane.hpp"
#include "rampsim/metrics.hpp"
#include "rampsim/scenario.hpp"
#include "rampsim/trace.hpp"
#include "rampsim/workload.hpp"

namespace ramp {

struct RunInputs {
  const Topology* topo = nullptr;
  const AnchorAssignment* anchors = nullptr;
  const ScenarioConfig* scenario = nullptr;
  // Optional pre-built tables (shared across runs); computed when absent.
  std::shared_ptr<const RouteTables> tables;
  std::shared_ptr<const NdnFibs> fibs;
};

RunMetrics run_simulation(const RunInputs& in, const RunConfig& rc,
                          TraceLogger* trace = nullptr);

// Convenience: run with an auditor attached and return both results.
struct AuditedRun {
  RunMetrics metrics;
  TraceAuditor::Report audit;
};
AuditedRun run_simulation_audited(const RunInputs& in, const RunConfig& rc);

}  // namespace ramp
