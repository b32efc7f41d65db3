// Network topology and anchor-to-prefix assignment, with the text file
// loaders used by the CLI.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rampsim/names.hpp"

namespace ramp {

using RouterId = std::uint32_t;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Link {
  RouterId a = 0, b = 0;
  double delay_s = 0.0;
  double rate_bps = 0.0;
};

// Undirected graph of routers. Router ids are arbitrary; internally every
// router also gets a dense index (its position in the sorted id list).
class Topology {
public:
  struct Neighbor {
    RouterId id;
    std::uint32_t idx;       // dense index of the neighbor
    std::uint32_t link_idx;  // into links()
  };

  void add_router(RouterId id);
  // Rejects self-links and duplicate pairs.
  void add_link(RouterId a, RouterId b, double delay_s, double rate_bps);

  std::size_t router_count() const { return routers_.size(); }
  const std::vector<RouterId>& routers() const { return routers_; }
  const std::vector<Link>& links() const { return links_; }

  bool has_router(RouterId id) const { return id_to_idx_.count(id) != 0; }
  std::uint32_t index_of(RouterId id) const;
  RouterId id_of(std::uint32_t idx) const { return routers_[idx]; }

  // Neighbors sorted by id.
  const std::vector<Neighbor>& neighbors(std::uint32_t idx) const { return adj_[idx]; }
  // Link between two routers, or -1.
  int link_between(RouterId a, RouterId b) const;

  Topology without_link(std::uint32_t link_idx) const;

  // One record per line: `node <id>` or `link <a> <b> <delay_ms> <rate_mbps>`.
  // '#' starts a comment.
  static Topology load(std::istream& in, const std::string& origin = "<topology>");
  static Topology load_file(const std::string& path);
  void save(std::ostream& out, const std::string& header = "") const;

private:
  void rebuild_index();

  std::vector<RouterId> routers_;  // sorted
  std::vector<Link> links_;
  std::map<RouterId, std::uint32_t> id_to_idx_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Which routers announce which prefixes. A prefix may be announced by more
// than one anchor; an anchor lists each of its prefixes once.
struct AnchorAssignment {
  std::map<RouterId, std::vector<NamePrefix>> bindings;

  void add(RouterId anchor, const NamePrefix& p);
  // Sorted distinct prefixes over all anchors.
  std::vector<NamePrefix> all_prefixes() const;
  // Anchors announcing p, sorted by id.
  std::vector<RouterId> anchors_of(const NamePrefix& p) const;

  // `anchor <router_id> <prefix> [<prefix>...]` per line, '#' comments.
  static AnchorAssignment load(std::istream& in, const Topology& topo,
                               const std::string& origin = "<anchors>");
  static AnchorAssignment load_file(const std::string& path, const Topology& topo);
  void save(std::ostream& out) const;
};

// Additive per-link cost used for route computation. Hop count by default.
using LinkCostFn = std::function<double(const Link&)>;
LinkCostFn hop_count_cost();

}  // namespace ramp
