// Serial reference kernel for the per-source shortest-path sweep. Kept as
// the baseline the OpenMP kernel is tested and benchmarked against.
#include <queue>

#include "rampsim/control_plane.hpp"

namespace ramp {

namespace detail {

void dijkstra_from(const Topology& t, const std::vector<double>& link_cost,
                   std::uint32_t source_idx, Dist* out) {
  const std::size_t n = t.router_count();
  for (std::size_t i = 0; i < n; ++i) out[i] = kInfDist;
  using QItem = std::pair<Dist, std::uint32_t>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> q;
  out[source_idx] = 0.0;
  q.emplace(0.0, source_idx);
  while (!q.empty()) {
    auto [d, u] = q.top();
    q.pop();
    if (d > out[u]) continue;
    for (const auto& nb : t.neighbors(u)) {
      Dist nd = d + link_cost[nb.link_idx];
      if (nd < out[nb.idx]) {
        out[nb.idx] = nd;
        q.emplace(nd, nb.idx);
      }
    }
  }
}

std::vector<double> resolve_link_costs(const Topology& t, const LinkCostFn& cost) {
  std::vector<double> out(t.links().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cost(t.links()[i]);
  return out;
}

}  // namespace detail

std::vector<Dist> source_distance_matrix_serial(const Topology& t,
                                                const std::vector<std::uint32_t>& sources,
                                                const LinkCostFn& cost) {
  const std::size_t n = t.router_count();
  auto link_cost = detail::resolve_link_costs(t, cost);
  std::vector<Dist> mat(sources.size() * n);
  for (std::size_t s = 0; s < sources.size(); ++s)
    detail::dijkstra_from(t, link_cost, sources[s], mat.data() + s * n);
  return mat;
}

}  // namespace ramp
