#include "ilscm/weighting.hpp"

#include <algorithm>
#include <map>

#include "ilscm/error.hpp"

namespace ilscm {

EdgeWeight edge_weight(const BurstSet& burst) { return EdgeWeight{burst.edge, burst.size()}; }

std::vector<EdgeWeight> sum_weights(std::span<const std::vector<EdgeWeight>> per_key) {
  std::map<EdgeKey, Weight> totals;
  for (const auto& weights : per_key) {
    for (const auto& ew : weights) totals[ew.edge] += ew.w;
  }
  std::vector<EdgeWeight> out;
  out.reserve(totals.size());
  for (const auto& [edge, w] : totals) out.push_back(EdgeWeight{edge, w});
  return out;
}

WeightedAdjacency build_adjacency(const SocialGraph& graph, std::span<const EdgeWeight> weights) {
  std::vector<VertexId> order;
  order.reserve(graph.vertices().size());
  for (const auto& v : graph.vertices()) order.push_back(v.id);
  const std::size_t n = order.size();

  std::vector<Weight> matrix(n * n, 0);
  std::set<EdgeKey> seen;
  auto index = [&](const VertexId& id) {
    return static_cast<std::size_t>(std::lower_bound(order.begin(), order.end(), id) - order.begin());
  };
  for (const auto& ew : weights) {
    if (graph.find_edge(ew.edge) == nullptr) {
      throw IntegrityError("weight given for edge " + ew.edge.str() + " which is not in the graph");
    }
    if (!seen.insert(ew.edge).second) {
      throw IntegrityError("duplicate weight for edge " + ew.edge.str());
    }
    const std::size_t i = index(ew.edge.first());
    const std::size_t j = index(ew.edge.second());
    matrix[i * n + j] = ew.w;
    matrix[j * n + i] = ew.w;
  }
  return WeightedAdjacency(std::move(order), std::move(matrix));
}

}  // namespace ilscm
