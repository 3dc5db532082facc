#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ilscm/error.hpp"
#include "ilscm/weighting.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace ilscm {
namespace {

using testing::ek;

BurstSet burst_of(std::initializer_list<const char*> words) {
  BurstSet b{ek("x", "y"), ContextKey::parse("aiub"), {}};
  for (const char* w : words) b.words.emplace(w, BurstScore{1.0, 5.0});
  return b;
}

TEST(EdgeWeightTest, CountsBurstWords) {
  EXPECT_EQ(edge_weight(burst_of({})).w, 0u);
  EXPECT_EQ(edge_weight(burst_of({"exam", "quiz"})).w, 2u);
  EXPECT_EQ(edge_weight(burst_of({"exam", "quiz"})).edge, ek("x", "y"));
}

TEST(EdgeWeightTest, SeventeenPlantedWords) {
  constexpr std::int64_t kDay = 86400;
  const TimeBinConfig bins{0, kDay, 10};
  std::vector<Interaction> its;
  for (std::int64_t d = 0; d < 10; ++d) {
    its.push_back({InteractionKind::comment, "movie pets food travel help", d * kDay + 50});
  }
  std::string planted = "aiub";
  for (int k = 1; k <= 17; ++k) planted += " event" + std::to_string(k);
  for (int rep = 0; rep < 2; ++rep) its.push_back({InteractionKind::post, planted, 4 * kDay + 10 + rep});
  const Edge edge{ek("x", "y"), its};
  const auto key = ContextKey::parse("aiub");
  FrequencyVector key_vec{"aiub", std::vector<std::uint64_t>(10, 0)};
  key_vec.counts[4] = 2;

  const auto expected = oracle::burst_words_bruteforce(edge, key, key_vec, bins, 0.7, 3.0);
  ASSERT_EQ(expected.size(), 17u);
  EXPECT_EQ(edge_weight(extract_burst_words(edge, key, key_vec, bins, {0.7, 3.0})).w, expected.size());
}

TEST(EdgeWeightTest, WeightEqualsCardinality) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    BurstSet b{ek("x", "y"), ContextKey::parse("aiub"), {}};
    const std::size_t n = rng() % 30;
    for (std::size_t i = 0; i < n; ++i) b.words.emplace("w" + std::to_string(rng() % 50), BurstScore{});
    EXPECT_EQ(edge_weight(b).w, b.words.size());
  }
}

TEST(BuildAdjacencyTest, NoWeightsGivesZeroMatrix) {
  const auto m = build_adjacency(testing::eleven_graph(), {});
  EXPECT_EQ(m.size(), 11u);
  EXPECT_EQ(m.max_weight(), 0u);
}

TEST(BuildAdjacencyTest, ElevenUserEntries) {
  const auto m = testing::eleven_matrix();
  const std::vector<std::tuple<const char*, const char*, Weight>> expected{
      {"A", "B", 17}, {"A", "D", 9},  {"B", "C", 21}, {"B", "D", 8},  {"B", "E", 14},
      {"C", "F", 29}, {"C", "G", 6},  {"E", "F", 19}, {"F", "G", 15}, {"F", "H", 8},
      {"F", "I", 25}, {"G", "H", 9},  {"F", "J", 8},  {"I", "K", 25}, {"D", "E", 0},
      {"E", "I", 0},  {"J", "K", 0}};
  Weight listed = 0;
  for (const auto& [u, v, w] : expected) {
    EXPECT_EQ(m.at(VertexId(u), VertexId(v)), w) << u << "-" << v;
    listed += w;
  }
  Weight total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      EXPECT_EQ(m.at(i, j), m.at(j, i));
      total += m.at(i, j);
    }
  }
  EXPECT_EQ(total, 2 * listed);
  EXPECT_EQ(m.order().front().str(), "A");
  EXPECT_EQ(m.order().back().str(), "K");
}

TEST(BuildAdjacencyTest, Errors) {
  const auto g = testing::eleven_graph();
  EXPECT_THROW(build_adjacency(g, std::vector<EdgeWeight>{{ek("A", "K"), 3}}), IntegrityError);
  EXPECT_THROW(build_adjacency(g, std::vector<EdgeWeight>{{ek("A", "B"), 3}, {ek("B", "A"), 4}}),
               IntegrityError);
}

TEST(BuildAdjacencyTest, SumOfEntriesIsTwiceTotalWeight) {
  std::mt19937_64 rng(29);
  const auto g = testing::eleven_graph();
  for (int round = 0; round < 20; ++round) {
    std::vector<EdgeWeight> ws;
    Weight sum = 0;
    for (const auto& e : g.edges()) {
      if (rng() % 2) continue;
      ws.push_back({e.key, rng() % 40});
      sum += ws.back().w;
    }
    const auto m = build_adjacency(g, ws);
    Weight total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) total += m.at(i, j);
    }
    EXPECT_EQ(total, 2 * sum);
  }
}

TEST(SumWeightsTest, AddsAcrossKeys) {
  const std::vector<std::vector<EdgeWeight>> per_key{
      {{ek("A", "B"), 2}, {ek("B", "C"), 0}},
      {{ek("B", "A"), 3}, {ek("C", "D"), 1}}};
  const auto sum = sum_weights(per_key);
  EXPECT_EQ(sum, (std::vector<EdgeWeight>{{ek("A", "B"), 5}, {ek("B", "C"), 0}, {ek("C", "D"), 1}}));
}

}  // namespace
}  // namespace ilscm
