#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ilscm {

/// Opaque user identifier. Non-empty; commas and control characters are
/// rejected so ids can be written verbatim into CSV headers.
class VertexId {
 public:
  explicit VertexId(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;

 private:
  std::string value_;
};

struct Vertex {
  VertexId id;
  std::map<std::string, std::string> attributes;
};

enum class InteractionKind { like, comment, share, tag, post, message };

std::string_view to_string(InteractionKind kind) noexcept;
std::optional<InteractionKind> parse_interaction_kind(std::string_view name) noexcept;

/// One timestamped exchange on an edge. Timestamps are UTC seconds.
struct Interaction {
  InteractionKind kind = InteractionKind::comment;
  std::string text;
  std::int64_t timestamp = 0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Unordered vertex pair, stored with `first < second`.
class EdgeKey {
 public:
  EdgeKey(VertexId a, VertexId b);

  const VertexId& first() const noexcept { return first_; }
  const VertexId& second() const noexcept { return second_; }

  /// "A-B" form used in diagnostics.
  std::string str() const;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;

 private:
  VertexId first_;
  VertexId second_;
};

struct Edge {
  EdgeKey key;
  std::vector<Interaction> interactions;
};

/// Simple undirected graph SG = (V, E). Immutable once constructed.
///
/// Vertices and edges are kept sorted by id / key so that every traversal
/// (and therefore every export) is deterministic. Edges given twice for the
/// same unordered pair are merged by concatenating their interactions in
/// input order.
class SocialGraph {
 public:
  SocialGraph() = default;

  /// Throws IntegrityError on duplicate or empty vertex ids, self-loops,
  /// or edges whose endpoints are not among `vertices`.
  SocialGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const Vertex* find_vertex(const VertexId& id) const;
  const Edge* find_edge(const EdgeKey& key) const;

  bool empty() const noexcept { return vertices_.empty(); }

  friend bool operator==(const SocialGraph& a, const SocialGraph& b);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

using Weight = std::uint64_t;

/// Symmetric, zero-diagonal, non-negative integer matrix over an ordered
/// vertex list.
class WeightedAdjacency {
 public:
  WeightedAdjacency() = default;

  /// `weights` is row-major, |order| x |order|. Throws InvalidArgument on
  /// shape mismatch, asymmetry, non-zero diagonal or duplicate ids.
  WeightedAdjacency(std::vector<VertexId> order, std::vector<Weight> weights);

  /// Zero matrix over `order`.
  static WeightedAdjacency zeros(std::vector<VertexId> order);

  std::size_t size() const noexcept { return order_.size(); }
  const std::vector<VertexId>& order() const noexcept { return order_; }

  Weight at(std::size_t i, std::size_t j) const { return weights_[i * order_.size() + j]; }
  Weight at(const VertexId& u, const VertexId& v) const;

  std::optional<std::size_t> index_of(const VertexId& id) const;

  /// Largest entry, 0 for an empty or all-zero matrix.
  Weight max_weight() const noexcept;

  /// Pairs (i < j) with a positive weight, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> positive_pairs() const;

  friend bool operator==(const WeightedAdjacency& a, const WeightedAdjacency& b) {
    return a.order_ == b.order_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<VertexId> order_;
  std::vector<Weight> weights_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Subgraph with exactly the edges in `keep` and the endpoints of those
/// edges as its vertex set. Throws IntegrityError naming the first unknown
/// edge key.
SocialGraph induced_subgraph(const SocialGraph& graph, const std::set<EdgeKey>& keep);

/// Connected components, each sorted by id, ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const SocialGraph& graph);

/// Same, over an explicit vertex list and edge list. Edge endpoints must be
/// members of `vertices`.
std::vector<std::vector<VertexId>> connected_components(const std::vector<VertexId>& vertices,
                                                        const std::vector<EdgeKey>& edges);

/// Tie strength pi(u, v): weight(u, v) divided by the largest matrix entry,
/// or 0 for an all-zero matrix.
double tie_strength(const WeightedAdjacency& adjacency, const VertexId& u, const VertexId& v);

}  // namespace ilscm
