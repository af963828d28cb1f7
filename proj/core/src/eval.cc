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

#include "graphreg/eval.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "graphreg/error.h"
#include "graphreg/losses.h"
#include "graphreg/text_util.h"

namespace graphreg {

namespace {

bool SharesLabel(const std::vector<ClassId>& a, const std::vector<ClassId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool HasLabel(const Example& e, ClassId c) {
  return std::binary_search(e.labels.begin(), e.labels.end(), c);
}

}  // namespace

const char* MetricName(Metric metric) {
  return metric == Metric::kCosine ? "cosine" : "euclidean";
}

Metric ParseMetric(const std::string& name) {
  if (name == "cosine") return Metric::kCosine;
  if (name == "euclidean") return Metric::kEuclidean;
  throw InvalidArgumentError("unknown metric '" + name +
                             "' (expected cosine or euclidean)");
}

std::vector<EmbeddedItem> EmbedDataset(const ModelParams& params,
                                       const Dataset& dataset, bool normalize) {
  std::vector<EmbeddedItem> items;
  items.reserve(dataset.size());
  for (const Example& e : dataset.examples) {
    DenseVector embedding = Forward(params, e.features).embedding;
    if (normalize) embedding = NormalizeEmbedding(embedding);
    items.push_back(EmbeddedItem{e.id, std::move(embedding), e.labels});
  }
  return items;
}

TopKResult KnnTopK(std::span<const EmbeddedItem> queries,
                   std::span<const EmbeddedItem> index,
                   std::span<const std::size_t> ks, Metric metric) {
  if (index.empty()) throw InvalidArgumentError("kNN: empty index");
  if (ks.empty()) throw InvalidArgumentError("kNN: no k requested");
  const std::size_t dim = index.front().embedding.dim();
  std::unordered_set<ExampleId> index_ids;
  for (const EmbeddedItem& item : index) {
    if (item.embedding.dim() != dim) {
      throw InvalidArgumentError("kNN: index embeddings differ in dim");
    }
    index_ids.insert(item.id);
  }

  TopKResult result;
  result.num_queries = queries.size();
  std::vector<std::size_t> effective;
  for (std::size_t k : ks) {
    if (k == 0) throw InvalidArgumentError("kNN: k must be positive");
    if (k > index.size()) {
      result.warnings.push_back("k=" + std::to_string(k) +
                                " exceeds the index size; clamped to " +
                                std::to_string(index.size()));
    }
    effective.push_back(std::min(k, index.size()));
  }
  const std::size_t k_max = *std::max_element(effective.begin(), effective.end());

  std::vector<std::size_t> hits(ks.size(), 0);
  std::vector<std::pair<double, ExampleId>> ranked(index.size());
  std::vector<std::size_t> order(index.size());
  for (const EmbeddedItem& q : queries) {
    if (q.embedding.dim() != dim) {
      throw InvalidArgumentError("kNN: query " + std::to_string(q.id) +
                                 " has embedding dim " +
                                 std::to_string(q.embedding.dim()) +
                                 ", index has " + std::to_string(dim));
    }
    if (q.labels.empty()) {
      throw InvalidArgumentError("kNN: query " + std::to_string(q.id) +
                                 " has no labels");
    }
    if (index_ids.contains(q.id)) {
      throw InvalidArgumentError("kNN: query " + std::to_string(q.id) +
                                 " is also in the index");
    }
    for (std::size_t i = 0; i < index.size(); ++i) {
      order[i] = i;
      ranked[i] = {Distance(metric, q.embedding.span(), index[i].embedding.span()),
                   index[i].id};
    }
    std::partial_sort(order.begin(), order.begin() + k_max, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return ranked[a] < ranked[b];
                      });
    // Rank of the first retrieved item sharing a label.
    std::size_t first_hit = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < k_max; ++r) {
      if (SharesLabel(q.labels, index[order[r]].labels)) {
        first_hit = r;
        break;
      }
    }
    for (std::size_t j = 0; j < effective.size(); ++j) {
      if (first_hit < effective[j]) ++hits[j];
    }
  }
  for (std::size_t j = 0; j < ks.size(); ++j) {
    result.accuracy[ks[j]] =
        queries.empty() ? 0.0
                        : static_cast<double>(hits[j]) /
                              static_cast<double>(queries.size());
  }
  return result;
}

bool TripletAccurate(double d_anchor_positive, double d_anchor_negative,
                     double eta) {
  return eta + d_anchor_positive - d_anchor_negative < 0.0;
}

std::vector<double> DefaultEtaGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-1.0 + 0.05 * i);
  return grid;
}

std::vector<CurvePoint> RecallVsMargin(
    std::span<const Triplet> triplets,
    const std::unordered_map<ExampleId, DenseVector>& embeddings,
    Metric metric, std::span<const double> eta_grid) {
  if (triplets.empty()) throw InvalidArgumentError("recall curve: no triplets");
  if (eta_grid.empty()) throw InvalidArgumentError("recall curve: empty eta grid");
  auto lookup = [&](ExampleId id) -> const DenseVector& {
    auto it = embeddings.find(id);
    if (it == embeddings.end()) {
      throw InvalidArgumentError("triplet references unknown id " +
                                 std::to_string(id));
    }
    return it->second;
  };
  std::vector<std::pair<double, double>> distances;
  distances.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    const DenseVector& a = lookup(t.anchor);
    distances.emplace_back(Distance(metric, a.span(), lookup(t.positive).span()),
                           Distance(metric, a.span(), lookup(t.negative).span()));
  }
  std::vector<CurvePoint> curve;
  curve.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    std::size_t satisfied = 0;
    for (const auto& [ap, an] : distances) {
      if (TripletAccurate(ap, an, eta)) ++satisfied;
    }
    curve.push_back({eta, static_cast<double>(satisfied) /
                              static_cast<double>(distances.size())});
  }
  return curve;
}

std::vector<Triplet> MakeSyntheticTriplets(const Dataset& dataset, Prng& rng,
                                           std::size_t count) {
  std::vector<std::vector<const Example*>> members(dataset.num_classes);
  for (const Example& e : dataset.examples) {
    for (ClassId c : e.labels) members[c].push_back(&e);
  }
  std::vector<ClassId> eligible;
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c].size() >= 2) eligible.push_back(static_cast<ClassId>(c));
  }
  if (eligible.size() < 2) {
    throw InvalidArgumentError(
        "triplets need at least two classes with two or more labeled examples");
  }
  const std::vector<DenseVector> centroids = ClassCentroids(dataset);

  // For each eligible class: foreign classes by centroid distance, keeping
  // only members that do not carry the anchor class.
  std::unordered_map<ClassId, std::vector<const Example*>> negatives;
  for (ClassId c : eligible) {
    std::vector<std::pair<double, ClassId>> foreign;
    for (std::size_t o = 0; o < members.size(); ++o) {
      if (o == c || members[o].empty()) continue;
      foreign.emplace_back(
          EuclideanDistance(centroids[c].span(), centroids[o].span()),
          static_cast<ClassId>(o));
    }
    std::sort(foreign.begin(), foreign.end());
    for (const auto& [d, o] : foreign) {
      std::vector<const Example*> pool;
      for (const Example* e : members[o]) {
        if (!HasLabel(*e, c)) pool.push_back(e);
      }
      if (!pool.empty()) {
        negatives[c] = std::move(pool);
        break;
      }
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(count);
  while (triplets.size() < count) {
    const ClassId c = eligible[rng.UniformInt(eligible.size())];
    const auto pick = SampleWithoutReplacement(rng, members[c].size(), 2);
    const bool swap = rng.UniformInt(2) == 1;
    const Example* anchor = members[c][pick[swap ? 1 : 0]];
    const Example* positive = members[c][pick[swap ? 0 : 1]];
    auto it = negatives.find(c);
    if (it == negatives.end()) continue;
    const Example* negative = it->second[rng.UniformInt(it->second.size())];
    triplets.push_back({anchor->id, positive->id, negative->id});
  }
  return triplets;
}

void WriteTopKTable(const EvalReport& report, std::ostream& out) {
  out << "# metric=" << MetricName(report.metric) << '\n';
  out << "# k\taccuracy\n";
  for (const auto& [k, acc] : report.top_k) {
    out << k << '\t' << FormatDouble(acc) << '\n';
  }
}

void WriteRecallCurve(const EvalReport& report, std::ostream& out) {
  out << "# metric=" << MetricName(report.metric) << '\n';
  out << "# eta\trecall\n";
  for (const CurvePoint& p : report.recall_curve) {
    out << FormatDouble(p.eta) << '\t' << FormatDouble(p.recall) << '\n';
  }
}

void WriteTriplets(std::span<const Triplet> triplets, std::ostream& out) {
  out << "# anchor\tpositive\tnegative\n";
  for (const Triplet& t : triplets) {
    out << t.anchor << '\t' << t.positive << '\t' << t.negative << '\n';
  }
}

void SaveTriplets(std::span<const Triplet> triplets, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteTriplets(triplets, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

std::vector<Triplet> ReadTriplets(std::istream& in) {
  std::vector<Triplet> triplets;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = TrimLineEnd(raw);
    if (IsCommentOrBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    std::optional<std::uint64_t> ids[3];
    bool ok = fields.size() == 3;
    for (int i = 0; ok && i < 3; ++i) ok = (ids[i] = ParseUint(fields[i])).has_value();
    if (!ok) {
      throw ParseError("triplet file line " + std::to_string(line_no) +
                       ": expected anchor<TAB>positive<TAB>negative");
    }
    Triplet t{*ids[0], *ids[1], *ids[2]};
    if (t.anchor == t.positive || t.anchor == t.negative ||
        t.positive == t.negative) {
      throw SchemaError("triplet file line " + std::to_string(line_no) +
                        ": ids must be distinct");
    }
    triplets.push_back(t);
  }
  return triplets;
}

std::vector<Triplet> LoadTriplets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open triplet file " + path);
  return ReadTriplets(in);
}

}  // namespace graphreg
