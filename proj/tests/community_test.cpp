#include <gtest/gtest.h>

#include <random>

#include "ilscm/community.hpp"
#include "ilscm/error.hpp"
#include "ilscm/io.hpp"
#include "ilscm/synth.hpp"
#include "test_support.hpp"

namespace ilscm {
namespace {

using testing::ek;
using testing::ids;

std::vector<std::vector<VertexId>> vertex_sets(const DetectionResult& r) {
  std::vector<std::vector<VertexId>> out;
  for (const auto& c : r.communities) out.push_back(c.vertices);
  return out;
}

synth::SynthParams planted_params() {
  return synth::parse_params(read_file(testing::fixture_dir() / "planted_aiub.json"));
}

DetectionConfig planted_config(const synth::SynthParams& p, double lambda) {
  DetectionConfig config;
  config.keys = {ContextKey::parse(p.key)};
  config.lambda = lambda;
  config.bins = p.horizon;
  return config;
}

TEST(FilterEdgesTest, ElevenUserAtTen) {
  const auto kept = filter_edges_by_weight(testing::eleven_matrix(), 10);
  const std::vector<EdgeKey> want{ek("A", "B"), ek("B", "C"), ek("B", "E"), ek("C", "F"),
                                  ek("E", "F"), ek("F", "G"), ek("F", "I"), ek("I", "K")};
  EXPECT_EQ(kept, want);
}

TEST(FilterEdgesTest, AtOrAboveMaxIsEmpty) {
  EXPECT_TRUE(filter_edges_by_weight(testing::eleven_matrix(), 29).empty());
  EXPECT_EQ(filter_edges_by_weight(testing::eleven_matrix(), 28.5), std::vector<EdgeKey>{ek("C", "F")});
}

TEST(FilterEdgesTest, NegativeLambdaNeverKeepsZeroEdges) {
  EXPECT_TRUE(filter_edges_by_weight(WeightedAdjacency::zeros(ids({"a", "b", "c"})), -1).empty());
  EXPECT_EQ(filter_edges_by_weight(testing::eleven_matrix(), -5).size(), 14u);
}

TEST(FilterVerticesTest, PathExamples) {
  WeightedAdjacency path(ids({"A", "B", "C"}), {0, 1, 0, 1, 0, 1, 0, 1, 0});
  const auto scores = betweenness(path);
  EXPECT_EQ(filter_vertices_by_betweenness(path, scores, 0.5), ids({"B"}));
  EXPECT_EQ(filter_vertices_by_betweenness(path, scores, -1), ids({"A", "B", "C"}));
  EXPECT_TRUE(filter_vertices_by_betweenness(path, scores, 1.0).empty());
}

TEST(DetectFromMatrixTest, ElevenUser) {
  const auto r = detect_from_matrix(testing::eleven_matrix(), 10);
  ASSERT_EQ(r.communities.size(), 1u);
  EXPECT_EQ(r.communities[0].vertices, ids({"A", "B", "C", "E", "F", "G", "I", "K"}));
  EXPECT_EQ(r.communities[0].edges.size(), 8u);
  EXPECT_EQ(r.communities[0].edges.front().edge, ek("A", "B"));
  EXPECT_EQ(r.communities[0].edges.front().weight, 17u);
  EXPECT_EQ(r.source, ResultSource::matrix);
  EXPECT_TRUE(detect_from_matrix(testing::eleven_matrix(), 29).communities.empty());
}

TEST(DetectFromMatrixTest, SplitsIntoComponents) {
  const auto r = detect_from_matrix(testing::eleven_matrix(), 20);
  EXPECT_EQ(vertex_sets(r), (std::vector<std::vector<VertexId>>{ids({"B", "C", "F", "I", "K"})}));
  const auto r24 = detect_from_matrix(testing::eleven_matrix(), 24);
  EXPECT_EQ(vertex_sets(r24), (std::vector<std::vector<VertexId>>{ids({"C", "F", "I", "K"})}));
  WeightedAdjacency two(ids({"a", "b", "c", "d"}), {0, 5, 0, 0, 5, 0, 0, 0, 0, 0, 0, 7, 0, 0, 7, 0});
  const auto split = detect_from_matrix(two, 1);
  ASSERT_EQ(split.communities.size(), 2u);
  EXPECT_EQ(split.communities[0].id, 0u);
  EXPECT_EQ(split.communities[1].vertices, ids({"c", "d"}));
}

TEST(DetectFromMatrixTest, BetweennessMode) {
  WeightedAdjacency path(ids({"A", "B", "C", "D"}), {0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0});
  const auto r = detect_from_matrix(path, 0.5, DetectionMode::vertex_betweenness);
  ASSERT_EQ(r.communities.size(), 1u);
  EXPECT_EQ(r.communities[0].vertices, ids({"B", "C"}));
  EXPECT_EQ(r.communities[0].edges.size(), 1u);
  // B and C both score 2; at lambda 2 nothing passes.
  EXPECT_TRUE(detect_from_matrix(path, 2, DetectionMode::vertex_betweenness).communities.empty());
}

TEST(DetectFromMatrixTest, MonotoneInLambda) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 30; ++round) {
    const auto m = testing::random_matrix(rng, 3 + rng() % 10, 0.5, 20);
    std::size_t prev_edges = SIZE_MAX;
    std::size_t prev_vertices = SIZE_MAX;
    for (double lambda = -1; lambda <= 21; lambda += 1) {
      const auto r = detect_from_matrix(m, lambda);
      std::size_t e = 0, v = 0;
      for (const auto& c : r.communities) {
        e += c.edges.size();
        v += c.vertices.size();
      }
      EXPECT_LE(e, prev_edges);
      EXPECT_LE(v, prev_vertices);
      prev_edges = e;
      prev_vertices = v;
    }
  }
}

TEST(DetectTest, EdgelessGraphGivesNoCommunities) {
  SocialGraph g({Vertex{VertexId("a"), {}}, Vertex{VertexId("b"), {}}}, {});
  DetectionConfig config;
  config.keys = {ContextKey::parse("aiub")};
  const auto r = detect(g, config);
  EXPECT_TRUE(r.communities.empty());
  EXPECT_EQ(r.matrix.size(), 2u);
  EXPECT_EQ(r.matrix.max_weight(), 0u);
}

TEST(DetectTest, ConfigErrors) {
  const auto g = testing::eleven_graph();
  DetectionConfig config;
  EXPECT_THROW(detect(g, config), DetectionError);
  config.keys = {ContextKey::parse("aiub")};
  config.lambda = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(detect(g, config), InvalidArgument);
  config.lambda = 1;
  config.thresholds.beta = 0.5;
  EXPECT_THROW(detect(g, config), InvalidArgument);
}

TEST(DetectTest, UnknownKeyIsNamed) {
  const auto p = planted_params();
  const auto [graph, truth] = synth::generate(p);
  auto config = planted_config(p, 2);
  config.keys = {ContextKey::parse("zebra")};
  try {
    detect(graph, config);
    FAIL();
  } catch (const DetectionError& e) {
    EXPECT_NE(std::string(e.what()).find("zebra"), std::string::npos);
  }
}

TEST(DetectTest, RecoversPlantedCommunity) {
  const auto p = planted_params();
  const auto [graph, truth] = synth::generate(p);
  const auto r = detect(graph, planted_config(p, 2));
  ASSERT_EQ(r.communities.size(), 1u);
  EXPECT_EQ(r.communities[0].vertices, truth.members(truth.burst_community));
  // Background words occasionally correlate with the key by chance; planted
  // words must still dominate.
  std::size_t planted = 0, total = 0;
  for (const auto& e : r.communities[0].edges) {
    EXPECT_GT(e.weight, 2u);
    EXPECT_EQ(e.weight, e.burst_words.size());
    for (const auto& w : e.burst_words) {
      EXPECT_NE(w, "aiub");
      planted += std::find(p.burst_vocab.begin(), p.burst_vocab.end(), w) != p.burst_vocab.end();
      ++total;
    }
  }
  EXPECT_GT(planted, 9 * total / 10);
}

TEST(DetectTest, KeysSumAndWordsUnion) {
  const auto p = planted_params();
  const auto [graph, truth] = synth::generate(p);
  auto one = planted_config(p, 2);
  auto two = one;
  two.keys.push_back(ContextKey::parse("exam"));
  const auto r1 = detect(graph, one);
  const auto r2 = detect(graph, two);
  const auto kw_aiub = compute_key_weights(graph, one.keys[0], one);
  const auto kw_exam = compute_key_weights(graph, two.keys[1], two);
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    const auto& key = graph.edges()[i].key;
    EXPECT_EQ(r2.matrix.at(key.first(), key.second()), kw_aiub.weights[i].w + kw_exam.weights[i].w);
    EXPECT_GE(r2.matrix.at(key.first(), key.second()), r1.matrix.at(key.first(), key.second()));
  }
}

TEST(DetectTest, Deterministic) {
  const auto p = planted_params();
  const auto [graph, truth] = synth::generate(p);
  const auto config = planted_config(p, 2);
  EXPECT_EQ(export_result(detect(graph, config), ExportFormat::communities_json),
            export_result(detect(graph, config), ExportFormat::communities_json));
}

TEST(DetectTest, BetweennessModeRuns) {
  const auto p = planted_params();
  const auto [graph, truth] = synth::generate(p);
  auto config = planted_config(p, 0);
  config.mode = DetectionMode::vertex_betweenness;
  const auto r = detect(graph, config);
  const auto scores = betweenness(r.matrix);
  std::size_t total = 0;
  for (const auto& c : r.communities) {
    for (const auto& v : c.vertices) EXPECT_GT(scores.vertex_scores.at(v), 0.0);
    total += c.vertices.size();
  }
  EXPECT_EQ(total, filter_vertices_by_betweenness(r.matrix, scores, 0).size());
}

}  // namespace
}  // namespace ilscm
