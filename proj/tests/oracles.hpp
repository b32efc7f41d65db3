// Independent reference implementations used as test oracles. These stay
// deliberately naive so they share no code with the library paths they
// check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rampsim/names.hpp"
#include "rampsim/topology.hpp"

namespace oracle {

// Linear scan LPM: longest prefix (component count) that leads the name.
inline std::optional<ramp::NamePrefix> naive_lpm(const ramp::Name& n,
                                                 const std::vector<ramp::NamePrefix>& set) {
  std::optional<ramp::NamePrefix> best;
  for (const auto& p : set) {
    if (!p.is_prefix_of(n)) continue;
    if (!best || p.component_count() > best->component_count()) best = p;
  }
  return best;
}

// Floyd-Warshall all-pairs distances over dense indices.
inline std::vector<double> floyd_warshall(const ramp::Topology& t,
                                          const ramp::LinkCostFn& cost) {
  const std::size_t n = t.router_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const auto& l : t.links()) {
    std::size_t a = t.index_of(l.a), b = t.index_of(l.b);
    double c = cost(l);
    d[a * n + b] = std::min(d[a * n + b], c);
    d[b * n + a] = std::min(d[b * n + a], c);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i * n + k] + d[k * n + j] < d[i * n + j])
          d[i * n + j] = d[i * n + k] + d[k * n + j];
  return d;
}

// Reference LRU model over a tiny array.
class LruModel {
public:
  explicit LruModel(std::size_t cap) : cap_(cap) {}

  std::optional<std::uint64_t> lookup(const ramp::Name& n) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (items_[i].first == n) {
        auto item = items_[i];
        items_.erase(items_.begin() + i);
        items_.insert(items_.begin(), item);
        return item.second;
      }
    }
    return std::nullopt;
  }

  void insert(const ramp::Name& n, std::uint64_t v) {
    if (cap_ == 0) return;
    if (lookup(n)) {
      items_.front().second = v;
      return;
    }
    if (items_.size() >= cap_) items_.pop_back();
    items_.insert(items_.begin(), {n, v});
  }

  std::size_t size() const { return items_.size(); }

private:
  std::size_t cap_;
  std::vector<std::pair<ramp::Name, std::uint64_t>> items_;
};

inline ramp::Name random_name(std::mt19937_64& rng, int max_components = 5,
                              int alphabet = 6) {
  int k = 1 + static_cast<int>(rng() % max_components);
  std::vector<std::string> comps;
  for (int i = 0; i < k; ++i)
    comps.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
  return ramp::Name::of(std::move(comps));
}

}  // namespace oracle
