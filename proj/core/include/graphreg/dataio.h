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

// Datasets and synthetic data.
//
// Dataset file: one example per line,
//   id<TAB>labels<TAB>f_1<TAB>...<TAB>f_dim
// where labels is a comma-separated list of class ids (empty for an
// unlabeled example) and features carry 17 significant digits. The writer
// emits a "# num_classes=<K>" line, which the reader honors; without it K is
// one more than the largest label seen.

#ifndef GRAPHREG_DATAIO_H_
#define GRAPHREG_DATAIO_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphreg/graph.h"
#include "graphreg/numerics.h"
#include "graphreg/types.h"

namespace graphreg {

enum class Split { kTrain, kQuery, kIndex };

struct Example {
  ExampleId id = 0;
  DenseVector features;
  // Sorted, unique. Empty for unlabeled examples.
  std::vector<ClassId> labels;
  Split split = Split::kTrain;
  // Generator-side class of the example (also for unlabeled ones). Not
  // serialized.
  std::optional<ClassId> latent_class;

  bool labeled() const { return !labels.empty(); }
  // latent_class if known, else the first label.
  std::optional<ClassId> KnownClass() const;
};

struct Dataset {
  std::vector<Example> examples;
  std::size_t num_classes = 0;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
  std::size_t dim() const;

  // Throws SchemaError on duplicate ids, mixed feature dims, label ids
  // >= num_classes, or non-finite features.
  void Validate() const;

  std::vector<ExampleId> LabeledIds() const;
  std::unordered_map<ExampleId, std::size_t> IdIndex() const;
  Dataset WithSplit(Split split) const;
};

Dataset ReadDataset(std::istream& in, Split split = Split::kTrain);
Dataset LoadDataset(const std::string& path, Split split = Split::kTrain);
void WriteDataset(const Dataset& dataset, std::ostream& out);
void SaveDataset(const Dataset& dataset, const std::string& path);

struct SyntheticConfig {
  std::size_t num_classes = 10;
  std::size_t per_class = 100;
  std::size_t dim = 16;
  double noise_sigma = 0.1;
  double unlabeled_fraction = 0.0;
  double multilabel_rate = 0.0;
  // Extra labeled examples per class in the query split.
  std::size_t query_per_class = 0;

  void Validate() const;
};

// Class centroids on the unit sphere; each example is its centroid plus
// isotropic Gaussian noise. Exactly round(unlabeled_fraction * N) training
// examples lose their labels. A labeled example gets a second label (the
// nearest other centroid) with probability multilabel_rate. Training ids are
// 0..N-1 in class-major order, query ids follow.
Dataset GenerateSynthetic(const SyntheticConfig& config, Prng& rng);

// Class centroid (mean feature vector) of every class with at least one
// labeled member; missing classes get an empty vector.
std::vector<DenseVector> ClassCentroids(const Dataset& dataset);

struct ClickLogConfig {
  // Probability that a labeled example emits a record towards each other
  // same-class training example.
  double intra_rate = 0.02;
  // Probability that an emitted intra-class record is accompanied by a
  // record towards a random example of another class.
  double noise_rate = 0.1;
  // Share of records of kind similar_image_click.
  double similar_image_fraction = 0.5;

  void Validate() const;
};

// Simulated interaction logs over the training split. Intra-class pairs get
// counts whose rates mostly clear the default threshold; noise pairs mostly
// do not.
std::vector<ClickLogRecord> GenerateClickLogs(const Dataset& dataset,
                                              const ClickLogConfig& config,
                                              Prng& rng);

}  // namespace graphreg

#endif  // GRAPHREG_DATAIO_H_
