#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ilscm/centrality.hpp"
#include "ilscm/graph.hpp"
#include "ilscm/text.hpp"
#include "ilscm/weighting.hpp"

namespace ilscm {

enum class DetectionMode { weight, vertex_betweenness };

std::string_view to_string(DetectionMode mode) noexcept;

struct DetectionConfig {
  std::vector<ContextKey> keys;
  double lambda = 0.0;
  DetectionMode mode = DetectionMode::weight;
  BurstThresholds thresholds;
  TimeBinConfig bins;
  /// Null means Tokenizer::standard().
  std::shared_ptr<const Tokenizer> tokenizer;

  const Tokenizer& tokenizer_or_default() const {
    return tokenizer ? *tokenizer : Tokenizer::standard();
  }
};

struct CommunityEdge {
  EdgeKey edge;
  Weight weight = 0;
  std::vector<std::string> burst_words;  // sorted; empty on the matrix path
};

struct Community {
  std::size_t id = 0;
  std::vector<VertexId> vertices;  // sorted
  std::vector<CommunityEdge> edges;
};

enum class ResultSource { graph, matrix };

/// R_G split into connected components, plus the matrix and settings that
/// produced it.
struct DetectionResult {
  std::vector<Community> communities;
  WeightedAdjacency matrix;
  ResultSource source = ResultSource::graph;
  DetectionConfig config;
};

/// Burst sets and weights for a single context key, one entry per edge in
/// edge-key order.
struct KeyWeights {
  ContextKey key;
  std::vector<BurstSet> bursts;
  std::vector<EdgeWeight> weights;
};

/// Runs the burst-word search for one key over every edge. Throws
/// DetectionError when the key does not occur in the corpus.
KeyWeights compute_key_weights(const SocialGraph& graph, const ContextKey& key,
                               const DetectionConfig& config);

/// Edges with w > lambda and w > 0, sorted by key.
std::vector<EdgeKey> filter_edges_by_weight(const WeightedAdjacency& adjacency, double lambda);

/// Vertices whose betweenness exceeds lambda, sorted by id.
std::vector<VertexId> filter_vertices_by_betweenness(const WeightedAdjacency& adjacency,
                                                     const BetweennessScores& scores,
                                                     double lambda);

/// Full pipeline: burst search per key and edge, weights summed over keys,
/// then threshold filtering and connected components.
DetectionResult detect(const SocialGraph& graph, const DetectionConfig& config);

/// Threshold filtering and components on a precomputed matrix.
DetectionResult detect_from_matrix(const WeightedAdjacency& adjacency, double lambda,
                                   DetectionMode mode = DetectionMode::weight);

}  // namespace ilscm
