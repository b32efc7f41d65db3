// rampsim command line: experiment runs with CSV output, protocol property
// verification (path equivalence, loop-freedom fuzzing, multi-homing
// analysis), and topology bundle generation.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "rampsim/audit.hpp"
#include "rampsim/control_plane.hpp"
#include "rampsim/simulation.hpp"

namespace fs = std::filesystem;
using namespace ramp;

namespace {

struct RunArgs {
  std::string topology, anchors, scenario, out = ".";
  std::string mode = "both";
  std::string cache = "none";
  std::string trace_path;
  std::vector<double> rates{100};
  std::uint64_t seed = 1;
  double horizon = 30;
  int threads = 0;
};

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw ConfigError("sweep: no rates given");
  return out;
}

int cmd_run(const RunArgs& args) {
  Topology topo = Topology::load_file(args.topology);
  AnchorAssignment anchors = AnchorAssignment::load_file(args.anchors, topo);
  ScenarioConfig scenario = ScenarioConfig::load_file(args.scenario);
  scenario.validate(topo);

  std::vector<Mode> modes;
  if (args.mode == "ramp")
    modes = {Mode::Ramp};
  else if (args.mode == "ndn")
    modes = {Mode::Ndn};
  else if (args.mode == "both")
    modes = {Mode::Ramp, Mode::Ndn};
  else
    throw ConfigError("mode: expected ramp|ndn|both, got '" + args.mode + "'");
  std::size_t cache_cap = parse_cache_mode(args.cache);

  RunInputs base;
  base.topo = &topo;
  base.anchors = &anchors;
  base.scenario = &scenario;
  for (Mode m : modes) {
    if (m == Mode::Ramp && !base.tables)
      base.tables =
          std::make_shared<const RouteTables>(compute_routes(topo, anchors, hop_count_cost()));
    if (m == Mode::Ndn && !base.fibs)
      base.fibs =
          std::make_shared<const NdnFibs>(build_ndn_fibs(topo, anchors, hop_count_cost()));
  }

  struct Job {
    Mode mode;
    double rate;
  };
  std::vector<Job> jobs;
  for (Mode m : modes)
    for (double r : args.rates) jobs.push_back(Job{m, r});

  if (!args.trace_path.empty() && jobs.size() != 1)
    throw ConfigError("trace: only available for a single (mode, rate) run");

#ifdef _OPENMP
  if (args.threads > 0) omp_set_num_threads(args.threads);
#endif

  std::vector<RunMetrics> results(jobs.size());
  std::exception_ptr err;
  const std::int64_t njobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < njobs; ++j) {
    try {
      RunConfig rc;
      rc.mode = jobs[j].mode;
      rc.rate_per_consumer = jobs[j].rate;
      rc.seed = args.seed;
      rc.horizon_s = args.horizon;
      rc.cache_capacity = cache_cap;
      if (!args.trace_path.empty()) {
        std::ofstream tf(args.trace_path);
        if (!tf) throw ConfigError("cannot open trace file: " + args.trace_path);
        TraceLogger logger;
        logger.add_sink([&tf](std::string_view line) { tf << line << "\n"; });
        results[j] = run_simulation(base, rc, &logger);
      } else {
        results[j] = run_simulation(base, rc, nullptr);
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  for (std::size_t j = 0; j < results.size(); ++j) {
    const RunMetrics& r = results[j];
    std::printf("run mode=%s rate=%s seed=%llu: completed=%llu failed=%llu "
                "mean_delay=%.6fs mean_hops=%.2f interests/router=%.1f loop_errors=%llu\n",
                r.mode.c_str(), format_double(r.rate).c_str(),
                static_cast<unsigned long long>(r.seed),
                static_cast<unsigned long long>(r.completed),
                static_cast<unsigned long long>(r.failed), r.mean_delay_s, r.mean_hops,
                r.mean_interests_forwarded,
                static_cast<unsigned long long>(r.loop_errors));
  }

  fs::create_directories(args.out);
  auto write = [&](const std::string& fname, auto writer) {
    fs::path p = fs::path(args.out) / fname;
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write " + p.string());
    writer(f, results);
    return p.string();
  };
  auto mode_mean = [&](const std::string& mode, auto getter) {
    double sum = 0;
    int n = 0;
    for (const auto& r : results)
      if (r.mode == mode) {
        sum += getter(r);
        ++n;
      }
    return n ? sum / n : 0.0;
  };

  std::string p1 = write("table_sizes.csv", write_table_sizes_csv);
  std::printf("table_sizes: ramp prt=%.1f fab=%.2f lsat=%.2f | ndn fib=%.1f pit=%.2f -> %s\n",
              mode_mean("ramp", [](const RunMetrics& r) { return r.table_mean(TableKind::Prt); }),
              mode_mean("ramp", [](const RunMetrics& r) { return r.table_mean(TableKind::Fab); }),
              mode_mean("ramp", [](const RunMetrics& r) { return r.table_mean(TableKind::Lsat); }),
              mode_mean("ndn", [](const RunMetrics& r) { return r.table_mean(TableKind::Fib); }),
              mode_mean("ndn", [](const RunMetrics& r) { return r.table_mean(TableKind::Pit); }),
              p1.c_str());
  std::string p2 = write("lookups.csv", write_lookups_csv);
  std::printf(
      "lookups/retrieval: ramp prt=%.3f fab=%.3f lsat=%.3f | ndn fib=%.3f pit=%.3f -> %s\n",
      mode_mean("ramp", [](const RunMetrics& r) { return r.lookup_rate(TableKind::Prt); }),
      mode_mean("ramp", [](const RunMetrics& r) { return r.lookup_rate(TableKind::Fab); }),
      mode_mean("ramp", [](const RunMetrics& r) { return r.lookup_rate(TableKind::Lsat); }),
      mode_mean("ndn", [](const RunMetrics& r) { return r.lookup_rate(TableKind::Fib); }),
      mode_mean("ndn", [](const RunMetrics& r) { return r.lookup_rate(TableKind::Pit); }),
      p2.c_str());
  std::string p3 = write("delays.csv", write_delays_csv);
  std::printf("delays: ramp mean=%.6fs | ndn mean=%.6fs -> %s\n",
              mode_mean("ramp", [](const RunMetrics& r) { return r.mean_delay_s; }),
              mode_mean("ndn", [](const RunMetrics& r) { return r.mean_delay_s; }), p3.c_str());
  std::string p4 = write("interests_per_router.csv", write_interests_csv);
  std::printf("interests/router: ramp mean=%.1f | ndn mean=%.1f -> %s\n",
              mode_mean("ramp", [](const RunMetrics& r) { return r.mean_interests_forwarded; }),
              mode_mean("ndn", [](const RunMetrics& r) { return r.mean_interests_forwarded; }),
              p4.c_str());
  return 0;
}

int cmd_verify_paths(const std::string& topology, const std::string& anchors_path) {
  Topology topo = Topology::load_file(topology);
  AnchorAssignment anchors = AnchorAssignment::load_file(anchors_path, topo);
  PathReport rep = verify_path_equivalence(topo, anchors, hop_count_cost(), topo.routers());
  std::printf("paths: %llu (origin, prefix) pairs checked (%llu single-anchor, %llu "
              "multi-homed), %zu divergences\n",
              static_cast<unsigned long long>(rep.pairs_checked),
              static_cast<unsigned long long>(rep.single_anchor_pairs),
              static_cast<unsigned long long>(rep.multi_homed_pairs), rep.divergences.size());
  for (std::size_t i = 0; i < rep.divergences.size() && i < 5; ++i) {
    const auto& d = rep.divergences[i];
    std::printf("  divergence: origin=%u prefix=%s\n", d.origin, d.prefix.str().c_str());
  }
  return rep.ok() ? 0 : 2;
}

int cmd_verify_loops(std::uint32_t seeds, const std::string& severities_text,
                     std::uint32_t nodes, double rate, double horizon, int threads) {
  std::vector<double> severities = parse_sweep(severities_text);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
  struct Result {
    std::uint64_t loop_errors = 0;
    std::uint64_t interests = 0;
    std::uint64_t stale_path_anomalies = 0;
    std::vector<std::string> violations;
  };
  std::vector<Result> results(seeds);
  FuzzParams params;
  params.nodes = nodes;
  const std::int64_t n = static_cast<std::int64_t>(seeds);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < n; ++s) {
    double severity = severities[s % severities.size()];
    SyntheticBundle fuzz = make_fuzz_case(params, static_cast<std::uint64_t>(s) + 1);
    auto tables = compute_routes(fuzz.topo, fuzz.anchors, hop_count_cost());
    auto perturbed = inject_inconsistency(tables, fuzz.topo, hop_count_cost(),
                                          static_cast<std::uint64_t>(s) * 7919 + 13, severity);
    RunInputs in;
    in.topo = &fuzz.topo;
    in.anchors = &fuzz.anchors;
    in.scenario = &fuzz.scenario;
    in.tables = std::make_shared<const RouteTables>(std::move(perturbed));
    RunConfig rc;
    rc.mode = Mode::Ramp;
    rc.rate_per_consumer = rate;
    rc.seed = static_cast<std::uint64_t>(s) + 1;
    rc.horizon_s = horizon;
    AuditedRun out = run_simulation_audited(in, rc);
    results[s].loop_errors = out.metrics.loop_errors;
    results[s].interests = out.audit.interest_forwards;
    results[s].stale_path_anomalies = out.audit.path_violations.size();
    results[s].violations = out.audit.loop_violations;
  }
  std::uint64_t total_loops = 0, total_interests = 0, total_violations = 0, total_stale = 0;
  for (const auto& r : results) {
    total_loops += r.loop_errors;
    total_interests += r.interests;
    total_violations += r.violations.size();
    total_stale += r.stale_path_anomalies;
    for (const auto& v : r.violations) std::printf("  violation: %s\n", v.c_str());
  }
  std::printf("loops: %u fuzz runs, %llu interest forwards audited, %llu loop-coded errors, "
              "%llu loop violations, %llu stale-path anomalies (in-flight traffic vs "
              "corrupted tables)\n",
              seeds, static_cast<unsigned long long>(total_interests),
              static_cast<unsigned long long>(total_loops),
              static_cast<unsigned long long>(total_violations),
              static_cast<unsigned long long>(total_stale));
  return total_violations == 0 ? 0 : 2;
}

int cmd_verify_multihoming() {
  // Scripted multi-homed scenario: prefix /mh anchored at both a_i=3 and
  // a_j=4; origin o=0 binds a_i over o-r-p-a_i; link (r,p) is the one that
  // fails.  Variants toggle the alternative paths available to the relay.
  struct Case {
    const char* label;
    bool fail;
    bool with_detour;      // r-x, x-y, y-a_i alternative (3 hops)
    bool near_alternative; // r-w, w-a_j (2 hops) vs far w-w2-a_j (3 hops)
    Advantage expected;
  };
  const Case cases[] = {
      {"intact", false, true, true, Advantage::None},
      {"shorter-detour", true, true, true, Advantage::ShorterDetour},
      {"equal-cost-detour", true, true, false, Advantage::None},
      {"partitioned", true, false, true, Advantage::OnlyRoute},
  };
  bool all_ok = true;
  for (const Case& c : cases) {
    Topology t;
    for (RouterId r : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) t.add_router(r);
    t.add_link(0, 1, 0.03, 1e10);  // o-r
    t.add_link(1, 2, 0.03, 1e10);  // r-p
    t.add_link(2, 3, 0.03, 1e10);  // p-a_i
    if (c.with_detour) {
      t.add_link(1, 5, 0.03, 1e10);  // r-x
      t.add_link(5, 6, 0.03, 1e10);  // x-y
      t.add_link(6, 3, 0.03, 1e10);  // y-a_i
    }
    t.add_link(1, 7, 0.03, 1e10);  // r-w
    if (c.near_alternative) {
      t.add_link(7, 4, 0.03, 1e10);  // w-a_j
    } else {
      t.add_link(7, 8, 0.03, 1e10);  // w-w2
      t.add_link(8, 4, 0.03, 1e10);  // w2-a_j
    }
    AnchorAssignment aa;
    NamePrefix mh = Name::parse("/mh");
    aa.add(3, mh);
    aa.add(4, mh);
    std::optional<std::uint32_t> failed;
    if (c.fail) failed = static_cast<std::uint32_t>(t.link_between(1, 2));
    MultihomingVerdict v =
        multihoming_advantage(t, aa, hop_count_cost(), failed, 0, 1, 3, mh);
    const char* got = v.condition == Advantage::None          ? "none"
                      : v.condition == Advantage::ShorterDetour ? "shorter-detour"
                                                                : "only-route";
    const char* want = c.expected == Advantage::None          ? "none"
                       : c.expected == Advantage::ShorterDetour ? "shorter-detour"
                                                                : "only-route";
    bool ok = v.condition == c.expected;
    all_ok = all_ok && ok;
    std::printf("multihoming %-18s verdict=%-14s expected=%-14s %s\n", c.label, got, want,
                ok ? "OK" : "MISMATCH");
  }
  return all_ok ? 0 : 2;
}

int cmd_gen(std::uint32_t nodes, std::uint32_t links, std::uint32_t anchors,
            std::uint32_t prefixes, std::uint32_t consumers, std::uint64_t seed,
            const std::string& out_prefix) {
  SyntheticBundle b = generate_synthetic_bundle(nodes, links, anchors, prefixes, consumers, seed);
  {
    std::ofstream f(out_prefix + ".topo");
    if (!f) throw ConfigError("cannot write " + out_prefix + ".topo");
    b.topo.save(f, "synthetic topology: " + std::to_string(nodes) + " nodes, " +
                       std::to_string(links) + " links, seed " + std::to_string(seed));
  }
  {
    std::ofstream f(out_prefix + ".anchors");
    if (!f) throw ConfigError("cannot write " + out_prefix + ".anchors");
    f << "# " << anchors << " anchors x " << prefixes << " prefixes\n";
    b.anchors.save(f);
  }
  {
    std::ofstream f(out_prefix + ".scenario");
    if (!f) throw ConfigError("cannot write " + out_prefix + ".scenario");
    f << "# " << consumers << " consumer routers (disjoint from anchors)\n";
    b.scenario.save(f);
  }
  std::printf("gen: wrote %s.topo %s.anchors %s.scenario\n", out_prefix.c_str(),
              out_prefix.c_str(), out_prefix.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rampsim: anchor-routing vs NDN-baseline forwarding simulator"};
  app.require_subcommand(1);

  RunArgs ra;
  std::string sweep;
  auto* run = app.add_subcommand("run", "run experiments and write CSV metrics");
  run->add_option("--topology", ra.topology, "topology file")->required();
  run->add_option("--anchors", ra.anchors, "anchor assignment file")->required();
  run->add_option("--scenario", ra.scenario, "scenario file")->required();
  run->add_option("--mode", ra.mode, "ramp|ndn|both (default both)");
  run->add_option("--rate", ra.rates, "requests/s per consumer router (repeatable)");
  run->add_option("--sweep", sweep, "comma-separated rate sweep, e.g. 100,500,1000,2000");
  run->add_option("--cache", ra.cache, "none or lru:<N> (default none)");
  run->add_option("--seed", ra.seed, "run seed (default 1)");
  run->add_option("--horizon", ra.horizon, "simulated seconds (default 30)");
  run->add_option("--out", ra.out, "output directory (default .)");
  run->add_option("--trace", ra.trace_path, "write event trace (single run only)");
  run->add_option("--threads", ra.threads, "parallel run dispatch threads");

  std::string vp_topology, vp_anchors;
  auto* verify = app.add_subcommand("verify", "check protocol properties");
  verify->require_subcommand(1);
  auto* vpaths = verify->add_subcommand("paths", "per-prefix vs per-anchor route equivalence");
  vpaths->add_option("--topology", vp_topology, "topology file")->required();
  vpaths->add_option("--anchors", vp_anchors, "anchor assignment file")->required();

  std::uint32_t vl_seeds = 100, vl_nodes = 30;
  std::string vl_severities = "0.1,0.5,1.0";
  double vl_rate = 50, vl_horizon = 5;
  int vl_threads = 0;
  auto* vloops = verify->add_subcommand("loops", "loop-freedom fuzzing on inconsistent tables");
  vloops->add_option("--seeds", vl_seeds, "number of fuzz runs (default 100)");
  vloops->add_option("--severities", vl_severities, "perturbation severities (default 0.1,0.5,1.0)");
  vloops->add_option("--nodes", vl_nodes, "graph size (default 30)");
  vloops->add_option("--rate", vl_rate, "requests/s per consumer (default 50)");
  vloops->add_option("--horizon", vl_horizon, "simulated seconds per run (default 5)");
  vloops->add_option("--threads", vl_threads, "parallel fuzz threads");

  auto* vmh = verify->add_subcommand("multihoming", "multi-homing advantage conditions");

  std::uint32_t g_nodes = 153, g_links = 184, g_anchors = 20, g_prefixes = 500,
                g_consumers = 70;
  std::uint64_t g_seed = 7;
  std::string g_out = "synth";
  auto* gen = app.add_subcommand("gen", "generate a synthetic topology bundle");
  gen->add_option("--nodes", g_nodes, "router count (default 153)");
  gen->add_option("--links", g_links, "link count (default 184)");
  gen->add_option("--anchors", g_anchors, "anchor count (default 20)");
  gen->add_option("--prefixes-per-anchor", g_prefixes, "prefixes per anchor (default 500)");
  gen->add_option("--consumers", g_consumers, "consumer router count (default 70)");
  gen->add_option("--seed", g_seed, "generator seed (default 7)");
  gen->add_option("--out", g_out, "output path prefix (default synth)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (!sweep.empty()) ra.rates = parse_sweep(sweep);
      return cmd_run(ra);
    }
    if (vpaths->parsed()) return cmd_verify_paths(vp_topology, vp_anchors);
    if (vloops->parsed())
      return cmd_verify_loops(vl_seeds, vl_severities, vl_nodes, vl_rate, vl_horizon,
                              vl_threads);
    if (vmh->parsed()) return cmd_verify_multihoming();
    if (gen->parsed())
      return cmd_gen(g_nodes, g_links, g_anchors, g_prefixes, g_consumers, g_seed, g_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
