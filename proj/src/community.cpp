#include "ilscm/community.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ilscm/error.hpp"

namespace ilscm {

namespace {

using BurstWordIndex = std::map<EdgeKey, std::set<std::string>>;

void check_lambda(double lambda) {
  if (!std::isfinite(lambda)) throw InvalidArgument("lambda must be finite");
}

std::vector<Community> assemble(const WeightedAdjacency& adjacency, double lambda,
                                DetectionMode mode, const BurstWordIndex& burst_words) {
  std::vector<VertexId> members;
  std::vector<EdgeKey> kept;

  if (mode == DetectionMode::weight) {
    kept = filter_edges_by_weight(adjacency, lambda);
    std::set<VertexId> endpoints;
    for (const auto& e : kept) {
      endpoints.insert(e.first());
      endpoints.insert(e.second());
    }
    members.assign(endpoints.begin(), endpoints.end());
  } else {
    if (adjacency.size() < 2) return {};
    members = filter_vertices_by_betweenness(adjacency, betweenness(adjacency), lambda);
    for (auto [i, j] : adjacency.positive_pairs()) {
      const auto& u = adjacency.order()[i];
      const auto& v = adjacency.order()[j];
      if (std::binary_search(members.begin(), members.end(), u) &&
          std::binary_search(members.begin(), members.end(), v)) {
        kept.emplace_back(u, v);
      }
    }
    std::sort(kept.begin(), kept.end());
  }

  std::vector<Community> communities;
  for (auto& component : connected_components(members, kept)) {
    Community c;
    c.id = communities.size();
    c.vertices = std::move(component);
    communities.push_back(std::move(c));
  }

  for (const auto& e : kept) {
    // Components are ordered by smallest member, so locate by membership.
    auto owner = std::find_if(communities.begin(), communities.end(), [&](const Community& c) {
      return std::binary_search(c.vertices.begin(), c.vertices.end(), e.first());
    });
    CommunityEdge ce{e, adjacency.at(e.first(), e.second()), {}};
    if (auto it = burst_words.find(e); it != burst_words.end()) {
      ce.burst_words.assign(it->second.begin(), it->second.end());
    }
    owner->edges.push_back(std::move(ce));
  }
  return communities;
}

}  // namespace

std::string_view to_string(DetectionMode mode) noexcept {
  return mode == DetectionMode::weight ? "weight" : "betweenness";
}

KeyWeights compute_key_weights(const SocialGraph& graph, const ContextKey& key,
                               const DetectionConfig& config) {
  const auto& tokenizer = config.tokenizer_or_default();
  const auto key_vec = key_profile(graph, key, config.bins, tokenizer);
  KeyWeights out{key, {}, {}};
  out.bursts.reserve(graph.edges().size());
  out.weights.reserve(graph.edges().size());
  for (const auto& edge : graph.edges()) {
    out.bursts.push_back(
        extract_burst_words(edge, key, key_vec, config.bins, config.thresholds, tokenizer));
    out.weights.push_back(edge_weight(out.bursts.back()));
  }
  return out;
}

std::vector<EdgeKey> filter_edges_by_weight(const WeightedAdjacency& adjacency, double lambda) {
  std::vector<EdgeKey> kept;
  for (auto [i, j] : adjacency.positive_pairs()) {
    if (static_cast<double>(adjacency.at(i, j)) > lambda) {
      kept.emplace_back(adjacency.order()[i], adjacency.order()[j]);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<VertexId> filter_vertices_by_betweenness(const WeightedAdjacency& adjacency,
                                                     const BetweennessScores& scores,
                                                     double lambda) {
  std::vector<VertexId> kept;
  for (const auto& id : adjacency.order()) {
    auto it = scores.vertex_scores.find(id);
    if (it != scores.vertex_scores.end() && it->second > lambda) kept.push_back(id);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

DetectionResult detect(const SocialGraph& graph, const DetectionConfig& config) {
  if (config.keys.empty()) throw DetectionError("no context keys given");
  check_lambda(config.lambda);
  config.thresholds.validate();
  config.bins.validate();

  DetectionResult result;
  result.source = ResultSource::graph;
  result.config = config;

  if (graph.edges().empty()) {
    std::vector<VertexId> order;
    for (const auto& v : graph.vertices()) order.push_back(v.id);
    result.matrix = WeightedAdjacency::zeros(std::move(order));
    return result;
  }

  std::vector<std::vector<EdgeWeight>> per_key;
  BurstWordIndex burst_words;
  std::set<ContextKey> done;
  for (const auto& key : config.keys) {
    if (!done.insert(key).second) continue;
    auto kw = compute_key_weights(graph, key, config);
    for (const auto& burst : kw.bursts) {
      auto& words = burst_words[burst.edge];
      for (const auto& [word, score] : burst.words) words.insert(word);
    }
    per_key.push_back(std::move(kw.weights));
  }

  const auto weights = sum_weights(per_key);
  result.matrix = build_adjacency(graph, weights);
  result.communities = assemble(result.matrix, config.lambda, config.mode, burst_words);
  return result;
}

DetectionResult detect_from_matrix(const WeightedAdjacency& adjacency, double lambda,
                                   DetectionMode mode) {
  check_lambda(lambda);
  DetectionResult result;
  result.source = ResultSource::matrix;
  result.matrix = adjacency;
  result.config.lambda = lambda;
  result.config.mode = mode;
  result.communities = assemble(adjacency, lambda, mode, {});
  return result;
}

}  // namespace ilscm
