#include <gtest/gtest.h>

#include "ilscm/error.hpp"
#include "ilscm/io.hpp"
#include "ilscm/synth.hpp"
#include "test_support.hpp"

namespace ilscm::synth {
namespace {

using testing::ids;

TEST(GenerateTest, SingleDenseCommunityIsComplete) {
  SynthParams p;
  p.n_vertices = 4;
  p.k_communities = 1;
  p.p_in = 1.0;
  p.p_out = 0.0;
  p.seed = 1;
  const auto [g, truth] = generate(p);
  EXPECT_EQ(g.vertices().size(), 4u);
  EXPECT_EQ(g.edges().size(), 6u);
  EXPECT_EQ(truth.community_count(), 1u);
  EXPECT_EQ(truth.members(0).size(), 4u);
}

TEST(GenerateTest, DeterministicPerSeed) {
  SynthParams p;
  p.seed = 77;
  EXPECT_EQ(export_graph(generate(p).first), export_graph(generate(p).first));
  auto q = p;
  q.seed = 78;
  EXPECT_NE(export_graph(generate(p).first), export_graph(generate(q).first));
}

TEST(GenerateTest, StructureFollowsParameters) {
  SynthParams p;
  p.seed = 3;
  const auto [g, truth] = generate(p);
  EXPECT_EQ(g.vertices().size(), p.n_vertices);
  EXPECT_EQ(truth.community_count(), p.k_communities);
  EXPECT_EQ(truth.key, "aiub");
  const auto event_lo = p.horizon.origin + static_cast<std::int64_t>(p.event_begin) * p.horizon.bin_width;
  const auto event_hi = p.horizon.origin + static_cast<std::int64_t>(p.event_end) * p.horizon.bin_width;
  for (const auto& e : g.edges()) {
    const bool inside = truth.assignment.at(e.key.first()) == p.burst_community &&
                        truth.assignment.at(e.key.second()) == p.burst_community;
    std::int64_t prev = INT64_MIN;
    for (const auto& it : e.interactions) {
      EXPECT_GE(it.timestamp, prev);
      prev = it.timestamp;
      EXPECT_TRUE(p.horizon.bin_of(it.timestamp).has_value());
      const bool mentions_key = it.text.find("aiub") != std::string::npos;
      if (mentions_key) {
        EXPECT_TRUE(inside);
        EXPECT_GE(it.timestamp, event_lo);
        EXPECT_LT(it.timestamp, event_hi);
      }
    }
  }
}

TEST(GenerateTest, NoBurstsMeansUnknownKey) {
  SynthParams p;
  p.burst_rate = 0.0;
  p.seed = 9;
  const auto [g, truth] = generate(p);
  DetectionConfig config;
  config.keys = {ContextKey::parse(p.key)};
  config.lambda = 2;
  config.bins = p.horizon;
  EXPECT_THROW(detect(g, config), DetectionError);
}

TEST(ParamsTest, Validation) {
  SynthParams p;
  EXPECT_NO_THROW(p.validate());
  auto bad = p;
  bad.k_communities = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.p_out = 0.9;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.event_end = 20;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.key = "zebra";
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.burst_vocab.push_back("w001");
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.burst_community = 3;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(ParamsTest, RoundTrip) {
  SynthParams p;
  p.seed = 123;
  p.p_out = 0.125;
  const auto doc = export_params(p);
  EXPECT_EQ(export_params(parse_params(doc)), doc);
  EXPECT_THROW(parse_params(R"({"bogus": 1})"), ParseError);
  EXPECT_THROW(parse_params("{"), ParseError);
  const auto fixture = read_file(testing::fixture_dir() / "planted_aiub.json");
  EXPECT_EQ(parse_params(fixture).seed, 20170326u);
}

TEST(TruthTest, RoundTrip) {
  SynthParams p;
  p.seed = 4;
  const auto truth = generate(p).second;
  const auto doc = export_truth(truth);
  const auto back = parse_truth(doc);
  EXPECT_EQ(back.assignment, truth.assignment);
  EXPECT_EQ(back.burst_words, truth.burst_words);
  EXPECT_EQ(export_truth(back), doc);
}

GroundTruth two_blocks() {
  GroundTruth t;
  for (const char* v : {"a", "b", "c", "d"}) t.assignment[VertexId(v)] = 0;
  for (const char* v : {"e", "f", "g", "h"}) t.assignment[VertexId(v)] = 1;
  t.key = "aiub";
  t.burst_words = {"aiub", "exam"};
  return t;
}

TEST(EvaluateTest, Identity) {
  const auto m = evaluate({ids({"a", "b", "c", "d"}), ids({"e", "f", "g", "h"})}, two_blocks());
  ASSERT_EQ(m.size(), 2u);
  for (const auto& c : m) {
    EXPECT_EQ(c.f1, 1.0);
    EXPECT_EQ(c.jaccard, 1.0);
    EXPECT_EQ(*c.matched, c.truth_community);
  }
}

TEST(EvaluateTest, DisjointAndHalf) {
  const auto disjoint = evaluate({ids({"x", "y"})}, two_blocks());
  EXPECT_FALSE(disjoint[0].matched.has_value());
  EXPECT_EQ(disjoint[0].f1, 0.0);

  const auto half = evaluate({ids({"a", "b"})}, two_blocks());
  EXPECT_EQ(*half[0].matched, 0u);
  EXPECT_EQ(half[0].precision, 1.0);
  EXPECT_EQ(half[0].recall, 0.5);
  EXPECT_NEAR(half[0].f1, 0.6666666666666666, 1e-15);
  EXPECT_EQ(half[0].jaccard, 0.5);
}

TEST(EvaluateTest, TiesGoToLowestId) {
  const auto m = evaluate({ids({"a", "b"}), ids({"c", "d"})}, two_blocks());
  EXPECT_EQ(*m[0].matched, 0u);
}

}  // namespace
}  // namespace ilscm::synth
