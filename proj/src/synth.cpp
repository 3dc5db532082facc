#include "ilscm/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

#include "ilscm/error.hpp"

namespace ilscm::synth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t uniform_int(std::uint64_t m) {
    // 2^64 mod m, computed without overflow.
    const std::uint64_t rem = (0 - m) % m;
    while (true) {
      const std::uint64_t x = engine_();
      if (rem == 0 || x < 0 - rem) return x % m;
    }
  }

  std::size_t count(double rate) {
    const double whole = std::floor(rate);
    return static_cast<std::size_t>(whole) + (uniform01() < rate - whole ? 1 : 0);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<InteractionKind, 5> kTextKinds{InteractionKind::comment, InteractionKind::share,
                                                     InteractionKind::tag, InteractionKind::post,
                                                     InteractionKind::message};

std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

std::size_t digit_count(std::size_t n) { return n < 10 ? 1 : 1 + digit_count(n / 10); }

std::string background_word(std::size_t i, std::size_t vocab_size) {
  return padded("w", i, std::max<std::size_t>(3, digit_count(vocab_size - 1)));
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

void SynthParams::validate() const {
  if (n_vertices == 0) throw InvalidArgument("n_vertices must be positive");
  if (k_communities == 0 || k_communities > n_vertices) {
    throw InvalidArgument("k_communities must lie in [1, n_vertices]");
  }
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw InvalidArgument("probabilities must satisfy 0 <= p_out < p_in <= 1");
  }
  if (vocab_size == 0) throw InvalidArgument("vocab_size must be positive");
  if (!(background_rate >= 0.0) || !(burst_rate >= 0.0) || !std::isfinite(background_rate) ||
      !std::isfinite(burst_rate)) {
    throw InvalidArgument("rates must be finite and non-negative");
  }
  horizon.validate();
  if (event_begin >= event_end || event_end > horizon.bin_count) {
    throw InvalidArgument("event window must be a non-empty bin range inside the horizon");
  }
  if (burst_community >= k_communities) throw InvalidArgument("burst_community must be < k_communities");
  if (burst_vocab.empty()) throw InvalidArgument("burst_vocab must not be empty");
  if (std::find(burst_vocab.begin(), burst_vocab.end(), key) == burst_vocab.end()) {
    throw InvalidArgument("the context key must be one of the burst words");
  }
  std::set<std::string> seen;
  for (const auto& word : burst_vocab) {
    auto tokens = Tokenizer::standard().tokenize(word);
    if (tokens.size() != 1 || tokens.front() != word) {
      throw InvalidArgument("burst word '" + word + "' is not a normalized token");
    }
    if (word.size() > 1 && word[0] == 'w' &&
        std::all_of(word.begin() + 1, word.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InvalidArgument("burst word '" + word + "' collides with the background vocabulary");
    }
    if (!seen.insert(word).second) throw InvalidArgument("duplicate burst word '" + word + "'");
  }
}

std::vector<VertexId> GroundTruth::members(std::size_t community) const {
  std::vector<VertexId> out;
  for (const auto& [id, c] : assignment) {
    if (c == community) out.push_back(id);
  }
  return out;
}

std::size_t GroundTruth::community_count() const {
  std::size_t k = 0;
  for (const auto& [id, c] : assignment) k = std::max(k, c + 1);
  return k;
}

std::pair<SocialGraph, GroundTruth> generate(const SynthParams& params) {
  params.validate();
  Random rng(params.seed);
  const std::size_t n = params.n_vertices;
  const std::size_t width = digit_count(n - 1);

  GroundTruth truth;
  truth.burst_community = params.burst_community;
  truth.burst_words = params.burst_vocab;
  truth.key = params.key;

  std::vector<Vertex> vertices;
  std::vector<std::size_t> community(n);
  for (std::size_t i = 0; i < n; ++i) {
    community[i] = i * params.k_communities / n;
    VertexId id(padded("u", i, width));
    truth.assignment.emplace(id, community[i]);
    vertices.push_back(Vertex{id, {{"name", padded("user_", i, width)}}});
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = community[i] == community[j] ? params.p_in : params.p_out;
      if (rng.uniform01() < p) pairs.emplace_back(i, j);
    }
  }

  const auto& bins = params.horizon;
  const auto span = static_cast<std::uint64_t>(bins.bin_width) * bins.bin_count;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    Edge edge{EdgeKey(vertices[i].id, vertices[j].id), {}};
    for (std::size_t k = 0; k < params.interactions_per_edge; ++k) {
      Interaction it;
      it.timestamp = bins.origin + static_cast<std::int64_t>(rng.uniform_int(span));
      it.kind = kTextKinds[rng.uniform_int(kTextKinds.size())];
      const std::size_t words = rng.count(params.background_rate);
      for (std::size_t w = 0; w < words; ++w) {
        if (w) it.text += ' ';
        it.text += background_word(rng.uniform_int(params.vocab_size), params.vocab_size);
      }
      edge.interactions.push_back(std::move(it));
    }
    if (community[i] == params.burst_community && community[j] == params.burst_community) {
      for (std::size_t b = params.event_begin; b < params.event_end; ++b) {
        const std::size_t count = rng.count(params.burst_rate);
        for (std::size_t k = 0; k < count; ++k) {
          Interaction it;
          it.kind = InteractionKind::post;
          it.timestamp = bins.origin + static_cast<std::int64_t>(b) * bins.bin_width +
                         static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(bins.bin_width)));
          for (std::size_t w = 0; w < params.burst_words_per_interaction; ++w) {
            if (w) it.text += ' ';
            it.text += params.burst_vocab[rng.uniform_int(params.burst_vocab.size())];
          }
          edge.interactions.push_back(std::move(it));
        }
      }
    }
    std::stable_sort(edge.interactions.begin(), edge.interactions.end(),
                     [](const Interaction& a, const Interaction& b) { return a.timestamp < b.timestamp; });
    edges.push_back(std::move(edge));
  }
  return {SocialGraph(std::move(vertices), std::move(edges)), std::move(truth)};
}

std::vector<CommunityMetrics> evaluate(const std::vector<std::vector<VertexId>>& detected,
                                       const GroundTruth& truth) {
  std::vector<CommunityMetrics> metrics;
  for (std::size_t t = 0; t < truth.community_count(); ++t) {
    const auto members = truth.members(t);
    const std::set<VertexId> truth_set(members.begin(), members.end());
    CommunityMetrics m;
    m.truth_community = t;
    std::size_t best_overlap = 0;
    std::size_t best_size = 0;
    for (std::size_t d = 0; d < detected.size(); ++d) {
      const std::set<VertexId> found(detected[d].begin(), detected[d].end());
      std::size_t overlap = 0;
      for (const auto& v : found) overlap += truth_set.count(v);
      const std::size_t uni = found.size() + truth_set.size() - overlap;
      const double jaccard = uni == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(uni);
      if (overlap > 0 && jaccard > m.jaccard) {
        m.jaccard = jaccard;
        m.matched = d;
        best_overlap = overlap;
        best_size = found.size();
      }
    }
    if (m.matched) {
      m.precision = static_cast<double>(best_overlap) / static_cast<double>(best_size);
      m.recall = static_cast<double>(best_overlap) / static_cast<double>(truth_set.size());
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    metrics.push_back(m);
  }
  return metrics;
}

std::vector<CommunityMetrics> evaluate(const DetectionResult& detected, const GroundTruth& truth) {
  std::vector<std::vector<VertexId>> sets;
  sets.reserve(detected.communities.size());
  for (const auto& c : detected.communities) sets.push_back(c.vertices);
  auto metrics = evaluate(sets, truth);
  for (auto& m : metrics) {
    if (m.matched) m.matched = detected.communities[*m.matched].id;
  }
  return metrics;
}

SynthParams parse_params(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text.begin(), text.end());
    SynthParams p;
    auto read = [&](const char* name, auto& field) {
      if (auto it = doc.find(name); it != doc.end()) it->get_to(field);
    };
    read("n_vertices", p.n_vertices);
    read("k_communities", p.k_communities);
    read("p_in", p.p_in);
    read("p_out", p.p_out);
    read("vocab_size", p.vocab_size);
    read("interactions_per_edge", p.interactions_per_edge);
    read("background_rate", p.background_rate);
    read("event_begin", p.event_begin);
    read("event_end", p.event_end);
    read("burst_vocab", p.burst_vocab);
    read("key", p.key);
    read("burst_community", p.burst_community);
    read("burst_rate", p.burst_rate);
    read("burst_words_per_interaction", p.burst_words_per_interaction);
    read("seed", p.seed);
    if (auto it = doc.find("horizon"); it != doc.end()) {
      it->at("origin").get_to(p.horizon.origin);
      it->at("bin_width").get_to(p.horizon.bin_width);
      it->at("bin_count").get_to(p.horizon.bin_count);
    }
    static const std::set<std::string> known{
        "n_vertices", "k_communities", "p_in", "p_out", "vocab_size", "interactions_per_edge",
        "background_rate", "event_begin", "event_end", "burst_vocab", "key", "burst_community",
        "burst_rate", "burst_words_per_interaction", "seed", "horizon"};
    for (const auto& [field, value] : doc.items()) {
      if (!known.count(field)) throw ParseError("unknown synth parameter \"" + field + "\"");
    }
    p.validate();
    return p;
  });
}

std::string export_params(const SynthParams& p) {
  ordered_json doc;
  doc["n_vertices"] = p.n_vertices;
  doc["k_communities"] = p.k_communities;
  doc["p_in"] = p.p_in;
  doc["p_out"] = p.p_out;
  doc["vocab_size"] = p.vocab_size;
  doc["interactions_per_edge"] = p.interactions_per_edge;
  doc["background_rate"] = p.background_rate;
  doc["event_begin"] = p.event_begin;
  doc["event_end"] = p.event_end;
  doc["burst_vocab"] = p.burst_vocab;
  doc["key"] = p.key;
  doc["burst_community"] = p.burst_community;
  doc["burst_rate"] = p.burst_rate;
  doc["burst_words_per_interaction"] = p.burst_words_per_interaction;
  doc["horizon"] = ordered_json{{"origin", p.horizon.origin},
                                {"bin_width", p.horizon.bin_width},
                                {"bin_count", p.horizon.bin_count}};
  doc["seed"] = p.seed;
  return doc.dump(2) + "\n";
}

GroundTruth parse_truth(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text.begin(), text.end());
    GroundTruth truth;
    for (const auto& [id, c] : doc.at("assignment").items()) {
      try {
        truth.assignment.emplace(VertexId(id), c.get<std::size_t>());
      } catch (const IntegrityError& e) {
        throw ParseError(std::string("ground truth: ") + e.what());
      }
    }
    doc.at("burst_community").get_to(truth.burst_community);
    doc.at("burst_words").get_to(truth.burst_words);
    doc.at("key").get_to(truth.key);
    if (!truth.assignment.empty() && truth.burst_community >= truth.community_count()) {
      throw ParseError("ground truth: burst_community out of range");
    }
    return truth;
  });
}

std::string export_truth(const GroundTruth& truth) {
  ordered_json assignment = ordered_json::object();
  for (const auto& [id, c] : truth.assignment) assignment[id.str()] = c;
  ordered_json doc;
  doc["assignment"] = std::move(assignment);
  doc["burst_community"] = truth.burst_community;
  doc["burst_words"] = truth.burst_words;
  doc["key"] = truth.key;
  return doc.dump(2) + "\n";
}

}  // namespace ilscm::synth
