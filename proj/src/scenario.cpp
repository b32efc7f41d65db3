#include "rampsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace ramp {

const char* to_string(Mode m) { return m == Mode::Ramp ? "ramp" : "ndn"; }

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail_at(const std::string& origin, int lineno, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
}

double parse_num(const std::string& origin, int lineno, const std::string& field,
                 const std::string& tok) {
  try {
    return std::stod(tok);
  } catch (const std::exception&) {
    fail_at(origin, lineno, field + ": bad number '" + tok + "'");
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::load(std::istream& in, const std::string& origin) {
  ScenarioConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];
    auto want = [&](std::size_t n) {
      if (toks.size() != n + 1)
        fail_at(origin, lineno, key + ": expected " + std::to_string(n) + " value(s)");
    };
    if (key == "consumer") {
      if (toks.size() < 2) fail_at(origin, lineno, "consumer: expected at least one router id");
      for (std::size_t i = 1; i < toks.size(); ++i)
        c.consumers.push_back(
            static_cast<RouterId>(parse_num(origin, lineno, "consumer", toks[i])));
    } else if (key == "zipf_alpha") {
      want(1);
      c.zipf_alpha = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "cos_per_prefix") {
      want(1);
      c.cos_per_prefix = static_cast<std::uint32_t>(parse_num(origin, lineno, key, toks[1]));
    } else if (key == "rto_s") {
      want(1);
      c.rto_s = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "max_retransmissions") {
      want(1);
      c.max_retransmissions = static_cast<std::uint32_t>(parse_num(origin, lineno, key, toks[1]));
    } else if (key == "sample_interval_s") {
      want(1);
      c.sample_interval_s = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "warmup_frac") {
      want(1);
      c.warmup_frac = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "aid_bits") {
      want(1);
      c.aid_bits = static_cast<unsigned>(parse_num(origin, lineno, key, toks[1]));
    } else if (key == "lsat_idle_ttl_s") {
      want(1);
      c.lsat_idle_ttl_s = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "pit_lifetime_s") {
      want(1);
      c.pit_lifetime_s = parse_num(origin, lineno, key, toks[1]);
    } else if (key == "fail_link") {
      want(3);
      LinkFailureEvent ev;
      ev.time_s = parse_num(origin, lineno, key, toks[1]);
      ev.a = static_cast<RouterId>(parse_num(origin, lineno, key, toks[2]));
      ev.b = static_cast<RouterId>(parse_num(origin, lineno, key, toks[3]));
      c.link_failures.push_back(ev);
    } else if (key == "refresh_tables_on_failure") {
      want(1);
      c.refresh_tables_on_failure = parse_num(origin, lineno, key, toks[1]) != 0;
    } else {
      fail_at(origin, lineno, "unknown key '" + key + "'");
    }
  }
  return c;
}

ScenarioConfig ScenarioConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  return load(in, path);
}

void ScenarioConfig::save(std::ostream& out) const {
  out << "zipf_alpha " << zipf_alpha << "\n";
  out << "cos_per_prefix " << cos_per_prefix << "\n";
  out << "rto_s " << rto_s << "\n";
  out << "max_retransmissions " << max_retransmissions << "\n";
  out << "sample_interval_s " << sample_interval_s << "\n";
  out << "warmup_frac " << warmup_frac << "\n";
  out << "aid_bits " << aid_bits << "\n";
  out << "pit_lifetime_s " << pit_lifetime_s << "\n";
  for (const auto& ev : link_failures)
    out << "fail_link " << ev.time_s << " " << ev.a << " " << ev.b << "\n";
  out << "consumer";
  for (std::size_t i = 0; i < consumers.size(); ++i) {
    if (i > 0 && i % 16 == 0) out << "\nconsumer";
    out << " " << consumers[i];
  }
  out << "\n";
}

void ScenarioConfig::validate(const Topology& topo) const {
  if (consumers.empty()) throw ConfigError("consumers: at least one consumer router required");
  for (RouterId r : consumers)
    if (!topo.has_router(r))
      throw ConfigError("consumers: unknown router " + std::to_string(r));
  std::set<RouterId> uniq(consumers.begin(), consumers.end());
  if (uniq.size() != consumers.size()) throw ConfigError("consumers: duplicate router id");
  if (cos_per_prefix == 0) throw ConfigError("cos_per_prefix: must be >= 1");
  if (zipf_alpha < 0) throw ConfigError("zipf_alpha: must be >= 0");
  if (rto_s <= 0) throw ConfigError("rto_s: must be > 0");
  if (sample_interval_s <= 0) throw ConfigError("sample_interval_s: must be > 0");
  if (warmup_frac < 0 || warmup_frac >= 1)
    throw ConfigError("warmup_frac: must be in [0,1)");
  if (aid_bits < 4 || aid_bits > 32) throw ConfigError("aid_bits: must be in [4,32]");
  if (pit_lifetime_s <= 0) throw ConfigError("pit_lifetime_s: must be > 0");
  for (const auto& ev : link_failures) {
    if (ev.time_s < 0) throw ConfigError("fail_link: time must be >= 0");
    if (topo.link_between(ev.a, ev.b) < 0)
      throw ConfigError("fail_link: no link " + std::to_string(ev.a) + "-" +
                        std::to_string(ev.b));
  }
}

void RunConfig::validate() const {
  if (rate_per_consumer <= 0) throw ConfigError("rate: must be > 0");
  if (horizon_s <= 0) throw ConfigError("horizon: must be > 0");
}

std::size_t parse_cache_mode(const std::string& text) {
  if (text == "none") return 0;
  if (text.rfind("lru:", 0) == 0) {
    try {
      long long n = std::stoll(text.substr(4));
      if (n <= 0) throw ConfigError("cache: lru capacity must be > 0");
      return static_cast<std::size_t>(n);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("cache: bad capacity in '" + text + "'");
    }
  }
  throw ConfigError("cache: expected 'none' or 'lru:<N>', got '" + text + "'");
}

Topology random_connected_topology(std::uint32_t nodes, std::uint32_t extra_links,
                                   std::uint64_t seed, double delay_s, double rate_bps) {
  std::mt19937_64 rng(seed);
  Topology t;
  for (std::uint32_t i = 0; i < nodes; ++i) t.add_router(i);
  for (std::uint32_t i = 1; i < nodes; ++i)
    t.add_link(i, static_cast<RouterId>(rng() % i), delay_s, rate_bps);
  std::uint32_t added = 0, attempts = 0;
  while (added < extra_links && attempts < extra_links * 50 + 100) {
    ++attempts;
    RouterId a = static_cast<RouterId>(rng() % nodes);
    RouterId b = static_cast<RouterId>(rng() % nodes);
    if (a == b || t.link_between(a, b) >= 0) continue;
    t.add_link(a, b, delay_s, rate_bps);
    ++added;
  }
  return t;
}

SyntheticBundle generate_synthetic_bundle(std::uint32_t nodes, std::uint32_t links,
                                          std::uint32_t anchor_count,
                                          std::uint32_t prefixes_per_anchor,
                                          std::uint32_t consumer_count, std::uint64_t seed) {
  if (anchor_count + consumer_count > nodes)
    throw ConfigError("synthetic bundle: anchors + consumers exceed node count");
  std::mt19937_64 rng(seed);
  SyntheticBundle b;

  const double delay = 0.030;
  const double rate = 1e10;
  const std::uint32_t core = std::min<std::uint32_t>(20, std::max<std::uint32_t>(3, nodes / 8));
  for (std::uint32_t i = 0; i < nodes; ++i) b.topo.add_router(i);

  // Well-connected core keeps average path lengths short; every other node
  // hangs off a random core router.
  std::uint32_t made = 0;
  for (std::uint32_t i = 0; i < core && made < links; ++i, ++made)
    b.topo.add_link(i, (i + 1) % core, delay, rate);
  std::uint32_t chords = core / 2;
  for (std::uint32_t c = 0; c < chords && made < links; ++c) {
    RouterId a = static_cast<RouterId>(rng() % core);
    RouterId d = static_cast<RouterId>(rng() % core);
    if (a == d || b.topo.link_between(a, d) >= 0) continue;
    b.topo.add_link(a, d, delay, rate);
    ++made;
  }
  for (std::uint32_t i = core; i < nodes && made < links; ++i, ++made)
    b.topo.add_link(i, static_cast<RouterId>(rng() % core), delay, rate);
  std::uint32_t attempts = 0;
  while (made < links && attempts < links * 60 + 200) {
    ++attempts;
    RouterId a = static_cast<RouterId>(rng() % nodes);
    RouterId d = static_cast<RouterId>(rng() % nodes);
    if (a == d || b.topo.link_between(a, d) >= 0) continue;
    b.topo.add_link(a, d, delay, rate);
    ++made;
  }
  if (made != links)
    throw ConfigError("synthetic bundle: could not place requested link count");

  // Disjoint anchor and consumer draws.
  std::vector<RouterId> ids(b.topo.routers());
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<RouterId> anchors(ids.begin(), ids.begin() + anchor_count);
  std::vector<RouterId> consumers(ids.begin() + anchor_count,
                                  ids.begin() + anchor_count + consumer_count);
  std::sort(anchors.begin(), anchors.end());
  std::sort(consumers.begin(), consumers.end());

  for (std::uint32_t j = 0; j < anchor_count; ++j)
    for (std::uint32_t k = 0; k < prefixes_per_anchor; ++k)
      b.anchors.add(anchors[j],
                    Name::of({"a" + std::to_string(j), "p" + std::to_string(k)}));

  b.scenario.consumers = consumers;
  return b;
}

SyntheticBundle make_fuzz_case(const FuzzParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  SyntheticBundle b;
  b.topo = random_connected_topology(p.nodes, p.extra_links, rng());

  std::vector<RouterId> ids(b.topo.routers());
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<RouterId> anchors(ids.begin(), ids.begin() + p.anchor_count);
  std::vector<RouterId> consumers(ids.begin() + p.anchor_count,
                                  ids.begin() + p.anchor_count + p.consumer_count);
  std::sort(anchors.begin(), anchors.end());
  std::sort(consumers.begin(), consumers.end());

  for (std::uint32_t j = 0; j < p.anchor_count; ++j)
    for (std::uint32_t k = 0; k < p.prefixes_per_anchor; ++k)
      b.anchors.add(anchors[j], Name::of({"a" + std::to_string(j), "p" + std::to_string(k)}));

  b.scenario.consumers = consumers;
  b.scenario.cos_per_prefix = 5;
  return b;
}

}  // namespace ramp
