#include "ilscm/graph.hpp"

#include <algorithm>
#include <array>

#include "ilscm/error.hpp"
#include "union_find.hpp"

namespace ilscm {

namespace {

constexpr std::array<std::pair<InteractionKind, std::string_view>, 6> kKindNames{{
    {InteractionKind::like, "like"},
    {InteractionKind::comment, "comment"},
    {InteractionKind::share, "share"},
    {InteractionKind::tag, "tag"},
    {InteractionKind::post, "post"},
    {InteractionKind::message, "message"},
}};

bool same_vertex(const Vertex& a, const Vertex& b) {
  return a.id == b.id && a.attributes == b.attributes;
}

bool same_edge(const Edge& a, const Edge& b) {
  return a.key == b.key && a.interactions == b.interactions;
}

}  // namespace

VertexId::VertexId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw IntegrityError("vertex id must be non-empty");
  for (unsigned char c : value_) {
    if (c == ',' || c < 0x20 || c == 0x7f) {
      throw IntegrityError("vertex id '" + value_ + "' contains a comma or control character");
    }
  }
}

std::string_view to_string(InteractionKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "comment";
}

std::optional<InteractionKind> parse_interaction_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

EdgeKey::EdgeKey(VertexId a, VertexId b) : first_(std::move(a)), second_(std::move(b)) {
  if (first_ == second_) throw IntegrityError("self-loop on vertex '" + first_.str() + "'");
  if (second_ < first_) std::swap(first_, second_);
}

std::string EdgeKey::str() const { return first_.str() + "-" + second_.str(); }

SocialGraph::SocialGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(vertices_.begin(), vertices_.end(),
                                [](const Vertex& a, const Vertex& b) { return a.id == b.id; });
  if (dup != vertices_.end()) {
    throw IntegrityError("duplicate vertex id '" + dup->id.str() + "'");
  }

  std::map<EdgeKey, std::vector<Interaction>> merged;
  for (auto& edge : edges) {
    for (const VertexId* end : {&edge.key.first(), &edge.key.second()}) {
      if (find_vertex(*end) == nullptr) {
        throw IntegrityError("edge " + edge.key.str() + " references unknown vertex '" +
                             end->str() + "'");
      }
    }
    auto& bucket = merged[edge.key];
    bucket.insert(bucket.end(), std::make_move_iterator(edge.interactions.begin()),
                  std::make_move_iterator(edge.interactions.end()));
  }
  edges_.reserve(merged.size());
  for (auto& [key, interactions] : merged) {
    edges_.push_back(Edge{key, std::move(interactions)});
  }
}

const Vertex* SocialGraph::find_vertex(const VertexId& id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, const VertexId& x) { return v.id < x; });
  return (it != vertices_.end() && it->id == id) ? &*it : nullptr;
}

const Edge* SocialGraph::find_edge(const EdgeKey& key) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                             [](const Edge& e, const EdgeKey& k) { return e.key < k; });
  return (it != edges_.end() && it->key == key) ? &*it : nullptr;
}

bool operator==(const SocialGraph& a, const SocialGraph& b) {
  return std::equal(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                    b.vertices_.end(), same_vertex) &&
         std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(),
                    same_edge);
}

WeightedAdjacency::WeightedAdjacency(std::vector<VertexId> order, std::vector<Weight> weights)
    : order_(std::move(order)), weights_(std::move(weights)) {
  const std::size_t n = order_.size();
  if (weights_.size() != n * n) {
    throw InvalidArgument("adjacency matrix has " + std::to_string(weights_.size()) +
                          " entries, expected " + std::to_string(n * n));
  }
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(order_[i].str(), i).second) {
      throw InvalidArgument("duplicate vertex '" + order_[i].str() + "' in adjacency order");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0) {
      throw InvalidArgument("non-zero diagonal entry for '" + order_[i].str() + "'");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i)) {
        throw InvalidArgument("adjacency matrix is not symmetric at (" + order_[i].str() + ", " +
                              order_[j].str() + ")");
      }
    }
  }
}

WeightedAdjacency WeightedAdjacency::zeros(std::vector<VertexId> order) {
  const std::size_t n = order.size();
  return WeightedAdjacency(std::move(order), std::vector<Weight>(n * n, 0));
}

std::optional<std::size_t> WeightedAdjacency::index_of(const VertexId& id) const {
  auto it = index_.find(id.str());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Weight WeightedAdjacency::at(const VertexId& u, const VertexId& v) const {
  auto i = index_of(u);
  auto j = index_of(v);
  if (!i) throw InvalidArgument("vertex '" + u.str() + "' not in adjacency matrix");
  if (!j) throw InvalidArgument("vertex '" + v.str() + "' not in adjacency matrix");
  return at(*i, *j);
}

Weight WeightedAdjacency::max_weight() const noexcept {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedAdjacency::positive_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (at(i, j) > 0) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

SocialGraph induced_subgraph(const SocialGraph& graph, const std::set<EdgeKey>& keep) {
  std::set<VertexId> endpoints;
  std::vector<Edge> edges;
  edges.reserve(keep.size());
  for (const auto& key : keep) {
    const Edge* edge = graph.find_edge(key);
    if (edge == nullptr) throw IntegrityError("unknown edge " + key.str());
    edges.push_back(*edge);
    endpoints.insert(key.first());
    endpoints.insert(key.second());
  }
  std::vector<Vertex> vertices;
  vertices.reserve(endpoints.size());
  for (const auto& id : endpoints) vertices.push_back(*graph.find_vertex(id));
  return SocialGraph(std::move(vertices), std::move(edges));
}

std::vector<std::vector<VertexId>> connected_components(const std::vector<VertexId>& vertices,
                                                        const std::vector<EdgeKey>& edges) {
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  auto index = [&](const VertexId& id) -> std::size_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
    if (it == sorted.end() || *it != id) {
      throw IntegrityError("edge endpoint '" + id.str() + "' is not a listed vertex");
    }
    return static_cast<std::size_t>(it - sorted.begin());
  };

  detail::UnionFind sets(sorted.size());
  for (const auto& e : edges) sets.unite(index(e.first()), index(e.second()));

  // Vertices are visited in id order, so components come out ordered by
  // their smallest member and already sorted internally.
  std::vector<std::vector<VertexId>> components;
  std::vector<std::size_t> slot(sorted.size(), SIZE_MAX);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::size_t root = sets.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(sorted[i]);
  }
  return components;
}

std::vector<std::vector<VertexId>> connected_components(const SocialGraph& graph) {
  std::vector<VertexId> ids;
  ids.reserve(graph.vertices().size());
  for (const auto& v : graph.vertices()) ids.push_back(v.id);
  std::vector<EdgeKey> keys;
  keys.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) keys.push_back(e.key);
  return connected_components(ids, keys);
}

double tie_strength(const WeightedAdjacency& adjacency, const VertexId& u, const VertexId& v) {
  if (u == v) throw InvalidArgument("tie strength needs two distinct vertices");
  const Weight w = adjacency.at(u, v);
  const Weight max = adjacency.max_weight();
  if (max == 0) return 0.0;
  return static_cast<double>(w) / static_cast<double>(max);
}

}  // namespace ilscm
