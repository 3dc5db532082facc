#include "ilscm/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ilscm/error.hpp"

namespace ilscm {

namespace {

bool same_length(double a, double b) {
  return std::fabs(a - b) <= kPathLengthTolerance * std::max(std::fabs(a), std::fabs(b));
}

struct Neighbor {
  std::size_t vertex;
  double length;
};

}  // namespace

BetweennessScores betweenness(const WeightedAdjacency& adjacency) {
  const std::size_t n = adjacency.size();
  if (n < 2) throw InvalidArgument("betweenness needs at least two vertices");

  std::vector<std::vector<Neighbor>> neighbors(n);
  for (auto [i, j] : adjacency.positive_pairs()) {
    const double length = 1.0 / static_cast<double>(adjacency.at(i, j));
    neighbors[i].push_back({j, length});
    neighbors[j].push_back({i, length});
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> vertex_credit(n, 0.0);
  std::vector<double> edge_credit(n * n, 0.0);

  std::vector<double> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<char> settled(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  using Entry = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();

    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    frontier.emplace(0.0, s);
    while (!frontier.empty()) {
      auto [d, v] = frontier.top();
      frontier.pop();
      if (settled[v]) continue;
      settled[v] = 1;
      order.push_back(v);
      for (const auto& [w, length] : neighbors[v]) {
        if (settled[w]) continue;
        const double candidate = d + length;
        if (dist[w] != kInf && same_length(candidate, dist[w])) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        } else if (candidate < dist[w]) {
          dist[w] = candidate;
          sigma[w] = sigma[v];
          preds[w].assign(1, v);
          frontier.emplace(candidate, w);
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) {
        const double share = sigma[v] / sigma[w] * (1.0 + delta[w]);
        edge_credit[std::min(v, w) * n + std::max(v, w)] += share;
        delta[v] += share;
      }
      if (w != s) vertex_credit[w] += delta[w];
    }
  }

  // Each unordered pair was counted once from each endpoint.
  BetweennessScores scores;
  const auto& ids = adjacency.order();
  for (std::size_t v = 0; v < n; ++v) scores.vertex_scores.emplace(ids[v], vertex_credit[v] / 2.0);
  for (auto [i, j] : adjacency.positive_pairs()) {
    scores.edge_scores.emplace(EdgeKey(ids[i], ids[j]), edge_credit[i * n + j] / 2.0);
  }
  return scores;
}

}  // namespace ilscm
