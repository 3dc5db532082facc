#pragma once

#include <map>

#include "ilscm/graph.hpp"

namespace ilscm {

/// Raw (unnormalized) shortest-path betweenness. Every unordered pair of
/// vertices contributes one unit, split evenly across its shortest paths.
struct BetweennessScores {
  std::map<VertexId, double> vertex_scores;  // every vertex of the matrix
  std::map<EdgeKey, double> edge_scores;     // every pair with positive weight
};

/// Relative tolerance under which two path lengths count as equal.
inline constexpr double kPathLengthTolerance = 1e-9;

/// Weighted betweenness with edge length 1/w; zero-weight pairs are not
/// traversable. Brandes accumulation over Dijkstra from every source.
BetweennessScores betweenness(const WeightedAdjacency& adjacency);

}  // namespace ilscm
