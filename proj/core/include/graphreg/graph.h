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

// Similarity graph construction from interaction logs.
//
// Two signals produce edges. The co-click rate of a pair is the Jaccard rate
// of the two images' selection events, joint / (count_u + count_v - joint).
// The similar-image click rate is joint / count_v, where count_v is the
// number of times u was shown for the query image v. An edge is kept when its
// rate is strictly above the threshold and its source u is labeled. Both
// signals are merged into one undirected graph; a pair seen more than once
// keeps its maximum rate.

#ifndef GRAPHREG_GRAPH_H_
#define GRAPHREG_GRAPH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphreg/numerics.h"
#include "graphreg/types.h"

namespace graphreg {

inline constexpr double kDefaultGraphThreshold = 0.1;

enum class ClickKind { kCoClick, kSimilarImageClick };

const char* ClickKindName(ClickKind kind);

struct ClickLogRecord {
  ClickKind kind = ClickKind::kCoClick;
  ExampleId image_u = 0;
  ExampleId image_v = 0;
  std::uint64_t joint_count = 0;
  std::uint64_t count_u = 0;
  // Selections of v for co-click; impressions of u under query image v for
  // similar-image click.
  std::uint64_t count_v = 0;

  friend bool operator==(const ClickLogRecord&, const ClickLogRecord&) = default;
};

// Empty when the record satisfies its invariants, otherwise the reason.
std::optional<std::string> ValidateRecord(const ClickLogRecord& record);

// Throws DegenerateInputError when both marginals are zero.
double CoClickRate(const ClickLogRecord& record);
// Throws DegenerateInputError when there are no impressions.
double SimilarImageClickRate(const ClickLogRecord& record);
double ClickRate(const ClickLogRecord& record);

struct Edge {
  ExampleId u = 0;  // source, always labeled
  ExampleId v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  ExampleId id = 0;
  double weight = 0.0;
};

// Immutable weighted undirected graph. Vertices are the labeled ids supplied
// at construction plus every edge endpoint.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  // Throws SchemaError when an edge has u == v, a weight outside (0, 1], an
  // unlabeled source, or repeats a pair.
  static SimilarityGraph FromEdges(std::vector<Edge> edges,
                                   std::span<const ExampleId> labeled_ids);

  // Sorted by (min(u,v), max(u,v)).
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted ascending.
  const std::vector<ExampleId>& vertices() const { return vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  bool empty() const { return edges_.empty(); }

  bool HasVertex(ExampleId id) const { return index_.contains(id); }
  bool IsLabeled(ExampleId id) const;
  // Neighbors sorted by id. Throws InvalidArgumentError on an unknown id.
  std::span<const Neighbor> Neighbors(ExampleId id) const;
  // Running sums of Neighbors(id) weights.
  std::span<const double> CumulativeWeights(ExampleId id) const;

 private:
  std::size_t IndexOf(ExampleId id) const;

  std::vector<Edge> edges_;
  std::vector<ExampleId> vertices_;
  std::vector<bool> labeled_;
  std::unordered_map<ExampleId, std::size_t> index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<double>> cumulative_;
};

struct BuildReport {
  std::size_t records = 0;
  std::size_t malformed = 0;
  std::size_t at_or_below_threshold = 0;
  std::size_t unlabeled_source = 0;
  std::size_t merged_duplicates = 0;
  // One line per malformed record, capped at kMaxWarnings.
  std::vector<std::string> warnings;

  static constexpr std::size_t kMaxWarnings = 20;
};

struct BuildResult {
  SimilarityGraph graph;
  BuildReport report;
};

// Records are canonicalized (sorted) first, so the result does not depend on
// input order. Malformed records are skipped and counted. Throws
// InvalidArgumentError unless 0 < threshold < 1.
BuildResult BuildGraph(std::vector<ClickLogRecord> records, double threshold,
                       std::span<const ExampleId> labeled_ids);

// Neighbor drawn with probability proportional to edge weight; nullopt for an
// isolated vertex. Throws InvalidArgumentError on an unknown id.
std::optional<Neighbor> SampleNeighbor(const SimilarityGraph& graph,
                                       ExampleId id, Prng& rng);

struct GraphStats {
  std::size_t vertices = 0;
  std::size_t labeled_vertices = 0;
  std::size_t edges = 0;
  // Bin k counts weights in [0.1 k, 0.1 (k + 1)); weight 1.0 lands in bin 9.
  std::array<std::size_t, 10> weight_histogram{};
  std::size_t labeled_labeled_edges = 0;
  std::size_t labeled_unlabeled_edges = 0;
};

GraphStats ComputeGraphStats(const SimilarityGraph& graph);
std::string FormatGraphStats(const GraphStats& stats);

// Click log: kind<TAB>u<TAB>v<TAB>joint<TAB>count_u<TAB>count_v, kind one of
// co_click / similar_image_click, '#' lines are comments.
struct ClickLogReadResult {
  std::vector<ClickLogRecord> records;
  std::size_t malformed_lines = 0;
  std::vector<std::string> warnings;  // capped like BuildReport
};

ClickLogReadResult ReadClickLog(std::istream& in);
ClickLogReadResult LoadClickLog(const std::string& path);
void WriteClickLog(std::span<const ClickLogRecord> records, std::ostream& out);
void SaveClickLog(std::span<const ClickLogRecord> records,
                  const std::string& path);

// Edge file: u<TAB>v<TAB>weight with 17 significant digits.
void WriteEdges(const SimilarityGraph& graph, std::ostream& out);
void SaveEdges(const SimilarityGraph& graph, const std::string& path);
// Throws ParseError (with line number) or SchemaError.
SimilarityGraph ReadEdges(std::istream& in,
                          std::span<const ExampleId> labeled_ids);
SimilarityGraph LoadEdges(const std::string& path,
                          std::span<const ExampleId> labeled_ids);

}  // namespace graphreg

#endif  // GRAPHREG_GRAPH_H_
