// OpenMP kernel for the per-source shortest-path sweep. Each source writes a
// disjoint matrix row, so the result is bit-identical to the serial kernel
// for any thread count.
#include "rampsim/control_plane.hpp"

namespace ramp {

namespace detail {
void dijkstra_from(const Topology& t, const std::vector<double>& link_cost,
                   std::uint32_t source_idx, Dist* out);
std::vector<double> resolve_link_costs(const Topology& t, const LinkCostFn& cost);
}  // namespace detail

std::vector<Dist> source_distance_matrix_omp(const Topology& t,
                                             const std::vector<std::uint32_t>& sources,
                                             const LinkCostFn& cost) {
  const std::size_t n = t.router_count();
  auto link_cost = detail::resolve_link_costs(t, cost);
  std::vector<Dist> mat(sources.size() * n);
  const std::int64_t count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < count; ++s)
    detail::dijkstra_from(t, link_cost, sources[s], mat.data() + s * n);
  return mat;
}

}  // namespace ramp
