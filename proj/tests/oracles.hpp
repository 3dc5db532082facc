#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ilscm/centrality.hpp"
#include "ilscm/graph.hpp"
#include "ilscm/text.hpp"

namespace ilscm::oracle {

/// Pearson correlation from exact integer sums:
///   r = (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2) * (n*Syy - Sy^2))
/// which is the raw-sum formula multiplied through by n. Only the final
/// square root and division are inexact (long double).
__extension__ using Int128 = __int128;

inline long double pearson_exact(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  const auto n = static_cast<Int128>(x.size());
  Int128 sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<Int128>(x[i]) * x[i];
    syy += static_cast<Int128>(y[i]) * y[i];
    sxy += static_cast<Int128>(x[i]) * y[i];
  }
  const Int128 num = n * sxy - sx * sy;
  const Int128 dx = n * sxx - sx * sx;
  const Int128 dy = n * syy - sy * sy;
  return static_cast<long double>(num) /
         std::sqrt(static_cast<long double>(dx) * static_cast<long double>(dy));
}

/// Betweenness by enumerating every simple path between every unordered
/// pair. Lengths are sums of 1/w along the path; paths within the relative
/// tolerance of the minimum all count as shortest.
inline BetweennessScores betweenness_bruteforce(const WeightedAdjacency& m,
                                                double tolerance = kPathLengthTolerance) {
  const std::size_t n = m.size();
  BetweennessScores scores;
  for (const auto& id : m.order()) scores.vertex_scores[id] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.at(i, j) > 0) scores.edge_scores[EdgeKey(m.order()[i], m.order()[j])] = 0.0;
    }
  }

  struct Path {
    std::vector<std::size_t> nodes;
    double length;
  };
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      std::vector<Path> paths;
      std::vector<std::size_t> stack{s};
      std::vector<char> on_path(n, 0);
      on_path[s] = 1;
      std::function<void(std::size_t, double)> walk = [&](std::size_t v, double length) {
        if (v == t) {
          paths.push_back({stack, length});
          return;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (on_path[w] || m.at(v, w) == 0) continue;
          on_path[w] = 1;
          stack.push_back(w);
          walk(w, length + 1.0 / static_cast<double>(m.at(v, w)));
          stack.pop_back();
          on_path[w] = 0;
        }
      };
      walk(s, 0.0);
      if (paths.empty()) continue;

      double best = paths.front().length;
      for (const auto& p : paths) best = std::min(best, p.length);
      std::vector<const Path*> shortest;
      for (const auto& p : paths) {
        if (std::fabs(p.length - best) <= tolerance * std::max(p.length, best)) shortest.push_back(&p);
      }
      const double share = 1.0 / static_cast<double>(shortest.size());
      for (const Path* p : shortest) {
        for (std::size_t k = 1; k + 1 < p->nodes.size(); ++k) {
          scores.vertex_scores[m.order()[p->nodes[k]]] += share;
        }
        for (std::size_t k = 0; k + 1 < p->nodes.size(); ++k) {
          scores.edge_scores[EdgeKey(m.order()[p->nodes[k]], m.order()[p->nodes[k + 1]])] += share;
        }
      }
    }
  }
  return scores;
}

/// Burst-word membership decided one vocabulary word at a time: bin the word
/// by direct timestamp arithmetic, correlate, burstiness-test.
inline std::set<std::string> burst_words_bruteforce(const Edge& edge, const ContextKey& key,
                                                    const FrequencyVector& key_vec,
                                                    const TimeBinConfig& bins, double rho_min,
                                                    double beta,
                                                    const Tokenizer& tokenizer = Tokenizer::standard()) {
  std::set<std::string> vocabulary;
  for (const auto& it : edge.interactions) {
    for (auto& tok : tokenizer.tokenize(it.text)) vocabulary.insert(tok);
  }
  std::set<std::string> words;
  for (const auto& word : vocabulary) {
    if (word == key.str()) continue;
    FrequencyVector f{word, std::vector<std::uint64_t>(bins.bin_count, 0)};
    for (const auto& it : edge.interactions) {
      if (it.timestamp < bins.origin) continue;
      const auto bin = static_cast<std::size_t>((it.timestamp - bins.origin) / bins.bin_width);
      if (bin >= bins.bin_count) continue;
      for (const auto& tok : tokenizer.tokenize(it.text)) f.counts[bin] += (tok == word);
    }
    if (f.is_constant()) continue;
    if (pearson(f, key_vec) < rho_min) continue;
    if (burstiness_classify(f, beta).topic_class != TopicClass::temporal) continue;
    words.insert(word);
  }
  return words;
}

/// Vertices reachable from `start` over the given undirected edges (BFS).
inline std::set<VertexId> reachable(const VertexId& start, const std::vector<EdgeKey>& edges) {
  std::set<VertexId> seen{start};
  std::vector<VertexId> frontier{start};
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (const auto& e : edges) {
      const VertexId* other = nullptr;
      if (e.first() == v) other = &e.second();
      if (e.second() == v) other = &e.first();
      if (other && seen.insert(*other).second) frontier.push_back(*other);
    }
  }
  return seen;
}

}  // namespace ilscm::oracle
