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

#include "graphreg/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "graphreg/error.h"
#include "graphreg/text_util.h"

namespace graphreg {

namespace {

std::pair<ExampleId, ExampleId> PairKey(ExampleId a, ExampleId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

void AddWarning(std::vector<std::string>& warnings, std::string message) {
  if (warnings.size() < BuildReport::kMaxWarnings) {
    warnings.push_back(std::move(message));
  }
}

std::optional<ClickKind> ParseKind(std::string_view text) {
  if (text == "co_click") return ClickKind::kCoClick;
  if (text == "similar_image_click") return ClickKind::kSimilarImageClick;
  return std::nullopt;
}

}  // namespace

const char* ClickKindName(ClickKind kind) {
  return kind == ClickKind::kCoClick ? "co_click" : "similar_image_click";
}

std::optional<std::string> ValidateRecord(const ClickLogRecord& r) {
  if (r.image_u == r.image_v) return "source and target ids are equal";
  if (r.joint_count > std::min(r.count_u, r.count_v)) {
    return "joint count exceeds a marginal count";
  }
  if (r.kind == ClickKind::kCoClick && r.count_u + r.count_v == 0) {
    return "co-click record with zero marginals";
  }
  if (r.kind == ClickKind::kSimilarImageClick && r.count_v == 0) {
    return "similar-image record with zero impressions";
  }
  return std::nullopt;
}

double CoClickRate(const ClickLogRecord& r) {
  if (r.count_u + r.count_v == 0) {
    throw DegenerateInputError("co-click rate: both marginal counts are zero");
  }
  const double joint = static_cast<double>(r.joint_count);
  return joint / (static_cast<double>(r.count_u) +
                  static_cast<double>(r.count_v) - joint);
}

double SimilarImageClickRate(const ClickLogRecord& r) {
  if (r.count_v == 0) {
    throw DegenerateInputError("similar-image click rate: zero impressions");
  }
  return static_cast<double>(r.joint_count) / static_cast<double>(r.count_v);
}

double ClickRate(const ClickLogRecord& r) {
  return r.kind == ClickKind::kCoClick ? CoClickRate(r)
                                       : SimilarImageClickRate(r);
}

SimilarityGraph SimilarityGraph::FromEdges(
    std::vector<Edge> edges, std::span<const ExampleId> labeled_ids) {
  SimilarityGraph g;
  std::unordered_set<ExampleId> labeled(labeled_ids.begin(), labeled_ids.end());
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return PairKey(a.u, a.v) < PairKey(b.u, b.v);
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string where =
        " (edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + ")";
    if (e.u == e.v) throw SchemaError("self loop" + where);
    if (!(e.weight > 0.0 && e.weight <= 1.0)) {
      throw SchemaError("edge weight outside (0, 1]" + where);
    }
    if (!labeled.contains(e.u)) {
      throw SchemaError("edge source is not a labeled vertex" + where);
    }
    if (i > 0 && PairKey(edges[i - 1].u, edges[i - 1].v) == PairKey(e.u, e.v)) {
      throw SchemaError("duplicate edge" + where);
    }
  }

  std::vector<ExampleId> vertices(labeled_ids.begin(), labeled_ids.end());
  for (const Edge& e : edges) {
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  g.vertices_ = std::move(vertices);
  g.labeled_.resize(g.vertices_.size());
  g.adjacency_.resize(g.vertices_.size());
  g.cumulative_.resize(g.vertices_.size());
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
    g.index_.emplace(g.vertices_[i], i);
    g.labeled_[i] = labeled.contains(g.vertices_[i]);
  }
  for (const Edge& e : edges) {
    g.adjacency_[g.index_.at(e.u)].push_back({e.v, e.weight});
    g.adjacency_[g.index_.at(e.v)].push_back({e.u, e.weight});
  }
  for (std::size_t i = 0; i < g.adjacency_.size(); ++i) {
    auto& adj = g.adjacency_[i];
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    double running = 0.0;
    for (const Neighbor& n : adj) {
      running += n.weight;
      g.cumulative_[i].push_back(running);
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

std::size_t SimilarityGraph::IndexOf(ExampleId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvalidArgumentError("unknown graph vertex " + std::to_string(id));
  }
  return it->second;
}

bool SimilarityGraph::IsLabeled(ExampleId id) const {
  return labeled_[IndexOf(id)];
}

std::span<const Neighbor> SimilarityGraph::Neighbors(ExampleId id) const {
  return adjacency_[IndexOf(id)];
}

std::span<const double> SimilarityGraph::CumulativeWeights(ExampleId id) const {
  return cumulative_[IndexOf(id)];
}

BuildResult BuildGraph(std::vector<ClickLogRecord> records, double threshold,
                       std::span<const ExampleId> labeled_ids) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidArgumentError("graph threshold must lie in (0, 1)");
  }
  BuildResult result;
  BuildReport& report = result.report;
  report.records = records.size();

  auto as_tuple = [](const ClickLogRecord& r) {
    return std::tuple(r.image_u, r.image_v, static_cast<int>(r.kind),
                      r.joint_count, r.count_u, r.count_v);
  };
  std::sort(records.begin(), records.end(),
            [&](const ClickLogRecord& a, const ClickLogRecord& b) {
              return as_tuple(a) < as_tuple(b);
            });

  std::unordered_set<ExampleId> labeled(labeled_ids.begin(), labeled_ids.end());
  std::map<std::pair<ExampleId, ExampleId>, Edge> merged;
  for (const ClickLogRecord& r : records) {
    if (auto problem = ValidateRecord(r)) {
      ++report.malformed;
      AddWarning(report.warnings, "skipped record " + std::to_string(r.image_u) +
                                      "\t" + std::to_string(r.image_v) + ": " +
                                      *problem);
      continue;
    }
    const double rate = ClickRate(r);
    if (!(rate > threshold)) {
      ++report.at_or_below_threshold;
      continue;
    }
    if (!labeled.contains(r.image_u)) {
      ++report.unlabeled_source;
      continue;
    }
    auto [it, inserted] = merged.try_emplace(PairKey(r.image_u, r.image_v),
                                             Edge{r.image_u, r.image_v, rate});
    if (!inserted) {
      ++report.merged_duplicates;
      if (rate > it->second.weight) it->second = Edge{r.image_u, r.image_v, rate};
    }
  }

  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (auto& [key, edge] : merged) edges.push_back(edge);
  result.graph = SimilarityGraph::FromEdges(std::move(edges), labeled_ids);
  return result;
}

std::optional<Neighbor> SampleNeighbor(const SimilarityGraph& graph,
                                       ExampleId id, Prng& rng) {
  const auto neighbors = graph.Neighbors(id);
  if (neighbors.empty()) return std::nullopt;
  const auto cumulative = graph.CumulativeWeights(id);
  const double target = rng.Uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  const std::size_t pick = std::min<std::size_t>(
      static_cast<std::size_t>(it - cumulative.begin()), neighbors.size() - 1);
  return neighbors[pick];
}

GraphStats ComputeGraphStats(const SimilarityGraph& graph) {
  GraphStats stats;
  stats.vertices = graph.num_vertices();
  for (ExampleId id : graph.vertices()) {
    if (graph.IsLabeled(id)) ++stats.labeled_vertices;
  }
  stats.edges = graph.num_edges();
  for (const Edge& e : graph.edges()) {
    const auto bin = std::min<std::size_t>(
        9, static_cast<std::size_t>(std::floor(e.weight * 10.0)));
    ++stats.weight_histogram[bin];
    if (graph.IsLabeled(e.v)) {
      ++stats.labeled_labeled_edges;
    } else {
      ++stats.labeled_unlabeled_edges;
    }
  }
  return stats;
}

std::string FormatGraphStats(const GraphStats& stats) {
  std::ostringstream out;
  out << "vertices\t" << stats.vertices << '\n'
      << "labeled_vertices\t" << stats.labeled_vertices << '\n'
      << "edges\t" << stats.edges << '\n'
      << "labeled_labeled_edges\t" << stats.labeled_labeled_edges << '\n'
      << "labeled_unlabeled_edges\t" << stats.labeled_unlabeled_edges << '\n';
  for (std::size_t k = 0; k < stats.weight_histogram.size(); ++k) {
    out << "weight_bin[" << k / 10.0 << "," << (k + 1) / 10.0 << ")\t"
        << stats.weight_histogram[k] << '\n';
  }
  return out.str();
}

ClickLogReadResult ReadClickLog(std::istream& in) {
  ClickLogReadResult result;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = TrimLineEnd(raw);
    if (IsCommentOrBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    std::optional<ClickKind> kind;
    std::optional<std::uint64_t> values[5];
    bool ok = fields.size() == 6 && (kind = ParseKind(fields[0]));
    for (int i = 0; ok && i < 5; ++i) {
      values[i] = ParseUint(fields[i + 1]);
      ok = values[i].has_value();
    }
    if (!ok) {
      ++result.malformed_lines;
      AddWarning(result.warnings,
                 "line " + std::to_string(line_no) + ": malformed click record");
      continue;
    }
    result.records.push_back(ClickLogRecord{*kind, *values[0], *values[1],
                                            *values[2], *values[3], *values[4]});
  }
  return result;
}

ClickLogReadResult LoadClickLog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open click log " + path);
  return ReadClickLog(in);
}

void WriteClickLog(std::span<const ClickLogRecord> records, std::ostream& out) {
  out << "# kind\tu\tv\tjoint_count\tcount_u\tcount_v\n";
  for (const ClickLogRecord& r : records) {
    out << ClickKindName(r.kind) << '\t' << r.image_u << '\t' << r.image_v
        << '\t' << r.joint_count << '\t' << r.count_u << '\t' << r.count_v
        << '\n';
  }
}

void SaveClickLog(std::span<const ClickLogRecord> records,
                  const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteClickLog(records, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

void WriteEdges(const SimilarityGraph& graph, std::ostream& out) {
  out << "# u\tv\tweight\n";
  for (const Edge& e : graph.edges()) {
    out << e.u << '\t' << e.v << '\t' << FormatDouble(e.weight) << '\n';
  }
}

void SaveEdges(const SimilarityGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteEdges(graph, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

SimilarityGraph ReadEdges(std::istream& in,
                          std::span<const ExampleId> labeled_ids) {
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = TrimLineEnd(raw);
    if (IsCommentOrBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    std::optional<std::uint64_t> u, v;
    std::optional<double> w;
    if (fields.size() != 3 || !(u = ParseUint(fields[0])) ||
        !(v = ParseUint(fields[1])) || !(w = ParseDouble(fields[2]))) {
      throw ParseError("edge file line " + std::to_string(line_no) +
                       ": expected u<TAB>v<TAB>weight");
    }
    edges.push_back(Edge{*u, *v, *w});
  }
  return SimilarityGraph::FromEdges(std::move(edges), labeled_ids);
}

SimilarityGraph LoadEdges(const std::string& path,
                          std::span<const ExampleId> labeled_ids) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge file " + path);
  return ReadEdges(in, labeled_ids);
}

}  // namespace graphreg
