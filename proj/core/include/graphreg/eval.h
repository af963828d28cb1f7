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

// Embedding evaluation: exact kNN Top-k accuracy and margin-based triplet
// accuracy.
//
// A query counts as a Top-k hit when at least one of its k nearest index
// items shares a label with it. A triplet (A, P, N) is satisfied at margin
// eta when eta + d(A, P) - d(A, N) < 0; the headline triplet accuracy is the
// satisfied fraction at eta = 0.

#ifndef GRAPHREG_EVAL_H_
#define GRAPHREG_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphreg/dataio.h"
#include "graphreg/model.h"
#include "graphreg/numerics.h"
#include "graphreg/types.h"

namespace graphreg {

struct EmbeddedItem {
  ExampleId id = 0;
  DenseVector embedding;
  std::vector<ClassId> labels;
};

// Embeds every example of dataset; with normalize, embeddings are scaled to
// unit L2 norm as at inference time.
std::vector<EmbeddedItem> EmbedDataset(const ModelParams& params,
                                       const Dataset& dataset, bool normalize);

struct TopKResult {
  // k -> fraction of queries with a hit among their k nearest items.
  std::map<std::size_t, double> accuracy;
  std::size_t num_queries = 0;
  std::vector<std::string> warnings;
};

// Brute-force exact search; ties broken by ascending index id. A k larger
// than the index is clamped to the index size with a warning. Throws
// InvalidArgumentError on an empty index or k list, k == 0, mismatched
// dims, unlabeled queries, or a query id that is also in the index.
TopKResult KnnTopK(std::span<const EmbeddedItem> queries,
                   std::span<const EmbeddedItem> index,
                   std::span<const std::size_t> ks, Metric metric);

bool TripletAccurate(double d_anchor_positive, double d_anchor_negative,
                     double eta);

struct Triplet {
  ExampleId anchor = 0;
  ExampleId positive = 0;
  ExampleId negative = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

struct CurvePoint {
  double eta = 0.0;
  double recall = 0.0;
};

// -1.0, -0.95, ..., 1.0.
std::vector<double> DefaultEtaGrid();

// Fraction of triplets satisfied at each eta. Throws InvalidArgumentError on
// empty triplets or grid, or a triplet id missing from embeddings.
std::vector<CurvePoint> RecallVsMargin(
    std::span<const Triplet> triplets,
    const std::unordered_map<ExampleId, DenseVector>& embeddings,
    Metric metric, std::span<const double> eta_grid);

// A and P share a class c (drawn uniformly among classes with at least two
// members); N comes from the class whose centroid is nearest to c's
// centroid and does not carry label c. Throws InvalidArgumentError unless at
// least two classes have two or more labeled members.
std::vector<Triplet> MakeSyntheticTriplets(const Dataset& dataset, Prng& rng,
                                           std::size_t count);

struct EvalReport {
  Metric metric = Metric::kEuclidean;
  std::map<std::size_t, double> top_k;
  // Present only when triplets were evaluated.
  std::optional<double> triplet_accuracy;
  std::vector<CurvePoint> recall_curve;
};

// "# metric=<name>" then k<TAB>accuracy rows.
void WriteTopKTable(const EvalReport& report, std::ostream& out);
// "# metric=<name>" then eta<TAB>recall rows.
void WriteRecallCurve(const EvalReport& report, std::ostream& out);

// anchor<TAB>positive<TAB>negative, '#' comments.
void WriteTriplets(std::span<const Triplet> triplets, std::ostream& out);
void SaveTriplets(std::span<const Triplet> triplets, const std::string& path);
std::vector<Triplet> ReadTriplets(std::istream& in);
std::vector<Triplet> LoadTriplets(const std::string& path);

const char* MetricName(Metric metric);
// Throws InvalidArgumentError for anything but "cosine" / "euclidean".
Metric ParseMetric(const std::string& name);

}  // namespace graphreg

#endif  // GRAPHREG_EVAL_H_
