#include "rampsim/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ramp {

void Topology::add_router(RouterId id) {
  if (id_to_idx_.count(id)) return;
  routers_.push_back(id);
  std::sort(routers_.begin(), routers_.end());
  rebuild_index();
}

void Topology::add_link(RouterId a, RouterId b, double delay_s, double rate_bps) {
  if (a == b) throw ConfigError("self-link at router " + std::to_string(a));
  if (!has_router(a) || !has_router(b))
    throw ConfigError("link references unknown router " +
                      std::to_string(has_router(a) ? b : a));
  if (link_between(a, b) >= 0)
    throw ConfigError("duplicate link " + std::to_string(a) + "-" + std::to_string(b));
  if (delay_s < 0 || rate_bps <= 0)
    throw ConfigError("link " + std::to_string(a) + "-" + std::to_string(b) +
                      ": delay must be >= 0 and rate > 0");
  links_.push_back(Link{a, b, delay_s, rate_bps});
  rebuild_index();
}

std::uint32_t Topology::index_of(RouterId id) const {
  auto it = id_to_idx_.find(id);
  if (it == id_to_idx_.end())
    throw ConfigError("unknown router " + std::to_string(id));
  return it->second;
}

int Topology::link_between(RouterId a, RouterId b) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return static_cast<int>(i);
  }
  return -1;
}

Topology Topology::without_link(std::uint32_t link_idx) const {
  Topology t;
  for (RouterId r : routers_) t.add_router(r);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (i == link_idx) continue;
    const Link& l = links_[i];
    t.add_link(l.a, l.b, l.delay_s, l.rate_bps);
  }
  return t;
}

void Topology::rebuild_index() {
  id_to_idx_.clear();
  for (std::uint32_t i = 0; i < routers_.size(); ++i) id_to_idx_[routers_[i]] = i;
  adj_.assign(routers_.size(), {});
  for (std::uint32_t li = 0; li < links_.size(); ++li) {
    const Link& l = links_[li];
    std::uint32_t ia = id_to_idx_.at(l.a), ib = id_to_idx_.at(l.b);
    adj_[ia].push_back(Neighbor{l.b, ib, li});
    adj_[ib].push_back(Neighbor{l.a, ia, li});
  }
  for (auto& v : adj_)
    std::sort(v.begin(), v.end(), [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
}

namespace {

// Strips comments, returns whitespace tokens.
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

}  // namespace

Topology Topology::load(std::istream& in, const std::string& origin) {
  Topology t;
  std::string line;
  int lineno = 0;
  // Two passes so links can reference routers declared later.
  std::vector<std::pair<int, std::vector<std::string>>> link_lines;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "node") {
        if (toks.size() != 2) fail_at(origin, lineno, "expected: node <id>");
        t.add_router(static_cast<RouterId>(std::stoul(toks[1])));
      } else if (toks[0] == "link") {
        if (toks.size() != 5) fail_at(origin, lineno, "expected: link <a> <b> <delay_ms> <rate_mbps>");
        link_lines.emplace_back(lineno, toks);
      } else {
        fail_at(origin, lineno, "unknown record '" + toks[0] + "'");
      }
    } catch (const std::invalid_argument&) {
      fail_at(origin, lineno, "bad number in '" + line + "'");
    }
  }
  for (auto& [ln, toks] : link_lines) {
    try {
      t.add_link(static_cast<RouterId>(std::stoul(toks[1])),
                 static_cast<RouterId>(std::stoul(toks[2])),
                 std::stod(toks[3]) / 1000.0, std::stod(toks[4]) * 1e6);
    } catch (const ConfigError& e) {
      fail_at(origin, ln, e.what());
    } catch (const std::invalid_argument&) {
      fail_at(origin, ln, "bad number");
    }
  }
  if (t.router_count() == 0) throw ConfigError(origin + ": no routers");
  return t;
}

Topology Topology::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open topology file: " + path);
  return load(in, path);
}

void Topology::save(std::ostream& out, const std::string& header) const {
  if (!header.empty()) out << "# " << header << "\n";
  for (RouterId r : routers_) out << "node " << r << "\n";
  for (const Link& l : links_)
    out << "link " << l.a << " " << l.b << " " << l.delay_s * 1000.0 << " "
        << l.rate_bps / 1e6 << "\n";
}

void AnchorAssignment::add(RouterId anchor, const NamePrefix& p) {
  auto& v = bindings[anchor];
  if (std::find(v.begin(), v.end(), p) != v.end())
    throw ConfigError("anchor " + std::to_string(anchor) + " announces " + p.str() + " twice");
  v.push_back(p);
}

std::vector<NamePrefix> AnchorAssignment::all_prefixes() const {
  std::vector<NamePrefix> out;
  for (const auto& [a, ps] : bindings) out.insert(out.end(), ps.begin(), ps.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RouterId> AnchorAssignment::anchors_of(const NamePrefix& p) const {
  std::vector<RouterId> out;
  for (const auto& [a, ps] : bindings)
    if (std::find(ps.begin(), ps.end(), p) != ps.end()) out.push_back(a);
  return out;  // map iteration is id-sorted already
}

AnchorAssignment AnchorAssignment::load(std::istream& in, const Topology& topo,
                                        const std::string& origin) {
  AnchorAssignment aa;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "anchor" || toks.size() < 3)
      fail_at(origin, lineno, "expected: anchor <router_id> <prefix> [<prefix>...]");
    RouterId r;
    try {
      r = static_cast<RouterId>(std::stoul(toks[1]));
    } catch (const std::invalid_argument&) {
      fail_at(origin, lineno, "bad router id '" + toks[1] + "'");
    }
    if (!topo.has_router(r)) fail_at(origin, lineno, "unknown router " + std::to_string(r));
    for (std::size_t i = 2; i < toks.size(); ++i) {
      try {
        aa.add(r, Name::parse(toks[i]));
      } catch (const std::exception& e) {
        fail_at(origin, lineno, e.what());
      }
    }
  }
  if (aa.bindings.empty()) throw ConfigError(origin + ": no anchors");
  return aa;
}

AnchorAssignment AnchorAssignment::load_file(const std::string& path, const Topology& topo) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open anchor file: " + path);
  return load(in, topo, path);
}

void AnchorAssignment::save(std::ostream& out) const {
  for (const auto& [a, ps] : bindings) {
    out << "anchor " << a;
    for (const auto& p : ps) out << " " << p.str();
    out << "\n";
  }
}

LinkCostFn hop_count_cost() {
  return [](const Link&) { return 1.0; };
}

}  // namespace ramp
