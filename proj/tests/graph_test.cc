// Copyright 2026 The graphreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>
#include <numeric>
#include <sstream>

#include "graphreg/error.h"
#include "graphreg/graph.h"
#include "gtest/gtest.h"

namespace graphreg {
namespace {

ClickLogRecord CoClick(ExampleId u, ExampleId v, std::uint64_t joint,
                       std::uint64_t cu, std::uint64_t cv) {
  return {ClickKind::kCoClick, u, v, joint, cu, cv};
}

ClickLogRecord SimilarImage(ExampleId u, ExampleId v, std::uint64_t joint,
                            std::uint64_t impressions) {
  return {ClickKind::kSimilarImageClick, u, v, joint, impressions, impressions};
}

TEST(ClickRateTest, CoClick) {
  EXPECT_DOUBLE_EQ(CoClickRate(CoClick(1, 2, 5, 10, 5)), 0.5);
  EXPECT_EQ(CoClickRate(CoClick(1, 2, 0, 10, 5)), 0.0);
  EXPECT_EQ(CoClickRate(CoClick(1, 2, 7, 7, 7)), 1.0);
  EXPECT_THROW(CoClickRate(CoClick(1, 2, 0, 0, 0)), DegenerateInputError);
}

TEST(ClickRateTest, SimilarImage) {
  EXPECT_DOUBLE_EQ(SimilarImageClickRate(SimilarImage(1, 2, 3, 10)), 0.3);
  EXPECT_EQ(SimilarImageClickRate(SimilarImage(1, 2, 0, 10)), 0.0);
  EXPECT_EQ(SimilarImageClickRate(SimilarImage(1, 2, 10, 10)), 1.0);
  EXPECT_THROW(SimilarImageClickRate(SimilarImage(1, 2, 0, 0)),
               DegenerateInputError);
}

TEST(ClickRateTest, ValidateRecord) {
  EXPECT_FALSE(ValidateRecord(CoClick(1, 2, 1, 2, 2)));
  EXPECT_TRUE(ValidateRecord(CoClick(1, 1, 1, 2, 2)));
  EXPECT_TRUE(ValidateRecord(CoClick(1, 2, 3, 2, 5)));
}

TEST(BuildGraphTest, ThresholdIsStrict) {
  const std::vector<ExampleId> labeled = {1, 2};
  const BuildResult r = BuildGraph({SimilarImage(1, 2, 3, 10)}, 0.3, labeled);
  EXPECT_TRUE(r.graph.empty());
  EXPECT_EQ(r.report.at_or_below_threshold, 1u);
  const BuildResult above = BuildGraph({SimilarImage(1, 2, 4, 10)}, 0.3, labeled);
  EXPECT_EQ(above.graph.num_edges(), 1u);
}

TEST(BuildGraphTest, MaxMergeAcrossKinds) {
  const std::vector<ExampleId> labeled = {1};
  // Co-click 3/(10+3-3)=0.3 and similar-image 5/10=0.5 on the same pair.
  const BuildResult r = BuildGraph(
      {CoClick(1, 2, 3, 10, 3), SimilarImage(1, 2, 5, 10)}, 0.1, labeled);
  ASSERT_EQ(r.graph.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(r.graph.edges()[0].weight, 0.5);
  EXPECT_EQ(r.report.merged_duplicates, 1u);
}

TEST(BuildGraphTest, ReversedPairMerges) {
  const std::vector<ExampleId> labeled = {1, 2};
  const BuildResult r = BuildGraph(
      {SimilarImage(1, 2, 3, 10), SimilarImage(2, 1, 6, 10)}, 0.1, labeled);
  ASSERT_EQ(r.graph.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(r.graph.edges()[0].weight, 0.6);
}

TEST(BuildGraphTest, SkipsMalformedAndUnlabeledSources) {
  const std::vector<ExampleId> labeled = {1};
  const BuildResult r = BuildGraph(
      {CoClick(1, 1, 1, 2, 2), SimilarImage(3, 1, 5, 10), SimilarImage(1, 3, 5, 10)},
      0.1, labeled);
  EXPECT_EQ(r.report.malformed, 1u);
  EXPECT_EQ(r.report.unlabeled_source, 1u);
  EXPECT_EQ(r.graph.num_edges(), 1u);
  EXPECT_FALSE(r.report.warnings.empty());
}

TEST(BuildGraphTest, EveryEdgeSourceIsLabeledAndAboveThreshold) {
  Prng rng(5);
  std::vector<ExampleId> labeled;
  for (ExampleId id = 0; id < 30; id += 2) labeled.push_back(id);
  std::vector<ClickLogRecord> records;
  for (int i = 0; i < 300; ++i) {
    const ExampleId u = rng.UniformInt(30);
    ExampleId v = rng.UniformInt(30);
    if (v == u) v = (v + 1) % 30;
    const std::uint64_t n = 1 + rng.UniformInt(50);
    records.push_back(SimilarImage(u, v, rng.UniformInt(n + 1), n));
  }
  const BuildResult r = BuildGraph(records, 0.25, labeled);
  for (const Edge& e : r.graph.edges()) {
    EXPECT_TRUE(r.graph.IsLabeled(e.u));
    EXPECT_GT(e.weight, 0.25);
    EXPECT_LE(e.weight, 1.0);
    EXPECT_NE(e.u, e.v);
  }
  // Adjacency mirrors the edge list.
  std::size_t degree_sum = 0;
  for (ExampleId id : r.graph.vertices()) degree_sum += r.graph.Neighbors(id).size();
  EXPECT_EQ(degree_sum, 2 * r.graph.num_edges());
}

TEST(BuildGraphTest, OrderIndependent) {
  const std::vector<ExampleId> labeled = {1, 2, 3};
  std::vector<ClickLogRecord> records = {SimilarImage(1, 4, 5, 10),
                                         CoClick(2, 3, 4, 8, 6),
                                         SimilarImage(3, 2, 9, 10)};
  const BuildResult a = BuildGraph(records, 0.1, labeled);
  std::reverse(records.begin(), records.end());
  const BuildResult b = BuildGraph(records, 0.1, labeled);
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
}

TEST(BuildGraphTest, InvalidThresholdThrows) {
  const std::vector<ExampleId> labeled = {1};
  EXPECT_THROW(BuildGraph({}, 0.0, labeled), InvalidArgumentError);
  EXPECT_THROW(BuildGraph({}, 1.0, labeled), InvalidArgumentError);
}

TEST(SimilarityGraphTest, FromEdgesValidates) {
  const std::vector<ExampleId> labeled = {1, 2};
  EXPECT_THROW(SimilarityGraph::FromEdges({{1, 1, 0.5}}, labeled), SchemaError);
  EXPECT_THROW(SimilarityGraph::FromEdges({{1, 3, 1.5}}, labeled), SchemaError);
  EXPECT_THROW(SimilarityGraph::FromEdges({{1, 3, 0.0}}, labeled), SchemaError);
  EXPECT_THROW(SimilarityGraph::FromEdges({{3, 1, 0.5}}, labeled), SchemaError);
  EXPECT_THROW(SimilarityGraph::FromEdges({{1, 3, 0.5}, {3, 1, 0.4}}, labeled),
               SchemaError);
}

TEST(SampleNeighborTest, SingleNeighbor) {
  const std::vector<ExampleId> labeled = {1};
  const SimilarityGraph g = SimilarityGraph::FromEdges({{1, 2, 0.4}}, labeled);
  Prng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto n = SampleNeighbor(g, 1, rng);
    ASSERT_TRUE(n);
    EXPECT_EQ(n->id, 2u);
    EXPECT_EQ(n->weight, 0.4);
  }
}

TEST(SampleNeighborTest, WeightProportional) {
  const std::vector<ExampleId> labeled = {1};
  const SimilarityGraph g =
      SimilarityGraph::FromEdges({{1, 2, 0.25}, {1, 3, 0.75}}, labeled);
  Prng rng(99);
  int twos = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    if (SampleNeighbor(g, 1, rng)->id == 2) ++twos;
  }
  EXPECT_NEAR(twos / static_cast<double>(draws), 0.25, 0.02);
}

TEST(SampleNeighborTest, IsolatedAndUnknown) {
  const std::vector<ExampleId> labeled = {1, 5};
  const SimilarityGraph g = SimilarityGraph::FromEdges({{1, 2, 0.4}}, labeled);
  Prng rng(1);
  EXPECT_FALSE(SampleNeighbor(g, 5, rng));
  EXPECT_THROW(SampleNeighbor(g, 42, rng), InvalidArgumentError);
}

TEST(GraphStatsTest, EmptyGraph) {
  const GraphStats s = ComputeGraphStats(SimilarityGraph());
  EXPECT_EQ(s.vertices, 0u);
  EXPECT_EQ(s.edges, 0u);
  EXPECT_EQ(std::accumulate(s.weight_histogram.begin(), s.weight_histogram.end(),
                            std::size_t{0}),
            0u);
}

TEST(GraphStatsTest, CountsAndHistogram) {
  const std::vector<ExampleId> labeled = {1, 2};
  const SimilarityGraph g = SimilarityGraph::FromEdges(
      {{1, 2, 0.15}, {1, 3, 0.55}, {2, 4, 1.0}}, labeled);
  const GraphStats s = ComputeGraphStats(g);
  EXPECT_EQ(s.edges, 3u);
  EXPECT_EQ(s.vertices, 4u);
  EXPECT_EQ(s.labeled_vertices, 2u);
  EXPECT_EQ(s.labeled_labeled_edges, 1u);
  EXPECT_EQ(s.labeled_unlabeled_edges, 2u);
  EXPECT_EQ(s.weight_histogram[1], 1u);
  EXPECT_EQ(s.weight_histogram[5], 1u);
  EXPECT_EQ(s.weight_histogram[9], 1u);
  EXPECT_EQ(std::accumulate(s.weight_histogram.begin(), s.weight_histogram.end(),
                            std::size_t{0}),
            s.edges);
  EXPECT_NE(FormatGraphStats(s).find("edges\t3"), std::string::npos);
}

TEST(ClickLogIoTest, RoundTripAndMalformedLines) {
  const std::vector<ClickLogRecord> records = {CoClick(1, 2, 3, 4, 5),
                                               SimilarImage(7, 8, 1, 9)};
  std::stringstream buf;
  WriteClickLog(records, buf);
  buf << "co_click\t1\tnot_a_number\t1\t1\t1\n";
  buf << "bogus_kind\t1\t2\t1\t1\t1\n";
  buf << "co_click\t1\t2\n";
  const ClickLogReadResult r = ReadClickLog(buf);
  EXPECT_EQ(r.records, records);
  EXPECT_EQ(r.malformed_lines, 3u);
}

TEST(EdgeIoTest, RoundTripIsExact) {
  const std::vector<ExampleId> labeled = {1, 2};
  const SimilarityGraph g = SimilarityGraph::FromEdges(
      {{1, 2, 1.0 / 3.0}, {2, 9, 0.7}, {1, 5, 0.123456789012345678}}, labeled);
  std::stringstream buf;
  WriteEdges(g, buf);
  const SimilarityGraph h = ReadEdges(buf, labeled);
  EXPECT_EQ(g.edges(), h.edges());
}

TEST(EdgeIoTest, ParseErrorsCarryLineNumbers) {
  const std::vector<ExampleId> labeled = {1};
  std::stringstream buf("# u\tv\tweight\n1\t2\t0.5\n1\tx\t0.5\n");
  try {
    ReadEdges(buf, labeled);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos);
  }
}

}  // namespace
}  // namespace graphreg
