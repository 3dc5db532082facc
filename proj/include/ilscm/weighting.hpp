#pragma once

#include <span>
#include <vector>

#include "ilscm/graph.hpp"
#include "ilscm/text.hpp"

namespace ilscm {

/// w_xy: number of burst words found on an edge.
struct EdgeWeight {
  EdgeKey edge;
  Weight w = 0;

  friend bool operator==(const EdgeWeight&, const EdgeWeight&) = default;
};

EdgeWeight edge_weight(const BurstSet& burst);

/// Adds per-key weight lists edge by edge. Result is sorted by edge key.
std::vector<EdgeWeight> sum_weights(std::span<const std::vector<EdgeWeight>> per_key);

/// Symmetric matrix over the graph's vertices (sorted by id). Pairs without
/// a weight are 0. Throws IntegrityError for weights on edges that are not
/// in the graph and for repeated edges.
WeightedAdjacency build_adjacency(const SocialGraph& graph, std::span<const EdgeWeight> weights);

}  // namespace ilscm
