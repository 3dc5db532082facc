#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ilscm/community.hpp"
#include "ilscm/graph.hpp"
#include "ilscm/text.hpp"

namespace ilscm::synth {

/// Parameters of the planted-partition generator.
///
/// Randomness comes from std::mt19937_64 seeded with `seed`. Derived draws
/// use only the raw 64-bit outputs so fixtures reproduce across standard
/// libraries:
///   uniform01()    = (next() >> 11) * 2^-53
///   uniform_int(m) = next() % m, rejecting outputs >= 2^64 - (2^64 % m)
///   count(rate)    = floor(rate) + (uniform01() < frac(rate) ? 1 : 0)
///
/// Draw order: one uniform01() per vertex pair (i < j, lexicographic) for
/// edge presence; then, edge by edge in the same order, the background
/// interactions (timestamp, kind, word count, words) followed by the burst
/// interactions of edges inside the burst community (per event bin: count,
/// then timestamp and words of each interaction).
struct SynthParams {
  std::size_t n_vertices = 30;
  std::size_t k_communities = 3;
  double p_in = 0.8;
  double p_out = 0.05;

  std::size_t vocab_size = 12;             // background words "w000", "w001", ...
  std::size_t interactions_per_edge = 84;  // background interactions per edge
  double background_rate = 4.0;            // background words per interaction

  std::size_t event_begin = 6;  // first event bin
  std::size_t event_end = 7;    // one past the last event bin
  std::vector<std::string> burst_vocab{"aiub", "exam", "quiz", "midterm", "result", "campus"};
  std::string key = "aiub";
  std::size_t burst_community = 0;
  double burst_rate = 12.0;                    // burst interactions per edge per event bin
  std::size_t burst_words_per_interaction = 3;

  TimeBinConfig horizon{1483228800, 86400, 14};
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when inconsistent.
  void validate() const;
};

struct GroundTruth {
  std::map<VertexId, std::size_t> assignment;
  std::size_t burst_community = 0;
  std::vector<std::string> burst_words;
  std::string key;

  std::vector<VertexId> members(std::size_t community) const;
  std::size_t community_count() const;
};

std::pair<SocialGraph, GroundTruth> generate(const SynthParams& params);

struct CommunityMetrics {
  std::size_t truth_community = 0;
  std::optional<std::size_t> matched;  // detected community id, if any overlaps
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double jaccard = 0.0;
};

/// Best match (largest Jaccard, lowest id on ties) for each planted
/// community, with vertex-membership precision, recall and F1.
std::vector<CommunityMetrics> evaluate(const DetectionResult& detected, const GroundTruth& truth);

/// Same, with detected communities given as plain vertex sets.
std::vector<CommunityMetrics> evaluate(const std::vector<std::vector<VertexId>>& detected,
                                       const GroundTruth& truth);

SynthParams parse_params(std::string_view json);
std::string export_params(const SynthParams& params);

GroundTruth parse_truth(std::string_view json);
std::string export_truth(const GroundTruth& truth);

}  // namespace ilscm::synth
