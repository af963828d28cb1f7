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

#include "graphreg/dataio.h"

#include <algorithm>
#include <cmath>
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

constexpr std::string_view kNumClassesDirective = "# num_classes=";

std::string LineError(std::size_t line_no, const std::string& what) {
  return "dataset line " + std::to_string(line_no) + ": " + what;
}

void CheckRate(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgumentError(std::string(name) + " must lie in [0, 1]");
  }
}

ClickLogRecord MakeRecord(ExampleId u, ExampleId v, bool intra,
                          const ClickLogConfig& config, Prng& rng) {
  ClickLogRecord r;
  r.kind = rng.Uniform() < config.similar_image_fraction
               ? ClickKind::kSimilarImageClick
               : ClickKind::kCoClick;
  r.image_u = u;
  r.image_v = v;
  r.count_u = 20 + rng.UniformInt(81);
  r.count_v = 20 + rng.UniformInt(81);
  const double fraction = intra ? 0.1 + 0.6 * rng.Uniform() : 0.2 * rng.Uniform();
  r.joint_count = static_cast<std::uint64_t>(
      std::llround(fraction * static_cast<double>(std::min(r.count_u, r.count_v))));
  return r;
}

}  // namespace

std::optional<ClassId> Example::KnownClass() const {
  if (latent_class) return latent_class;
  if (!labels.empty()) return labels.front();
  return std::nullopt;
}

std::size_t Dataset::dim() const {
  return examples.empty() ? 0 : examples.front().features.dim();
}

void Dataset::Validate() const {
  std::unordered_set<ExampleId> seen;
  const std::size_t d = dim();
  for (const Example& e : examples) {
    const std::string where = " (example " + std::to_string(e.id) + ")";
    if (!seen.insert(e.id).second) throw SchemaError("duplicate id" + where);
    if (e.features.dim() != d) {
      throw SchemaError("feature dim " + std::to_string(e.features.dim()) +
                        " differs from " + std::to_string(d) + where);
    }
    if (!e.features.AllFinite()) throw SchemaError("non-finite feature" + where);
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      if (e.labels[i] >= num_classes) {
        throw SchemaError("label " + std::to_string(e.labels[i]) +
                          " out of range for " + std::to_string(num_classes) +
                          " classes" + where);
      }
      if (i > 0 && e.labels[i - 1] >= e.labels[i]) {
        throw SchemaError("labels must be sorted and unique" + where);
      }
    }
  }
}

std::vector<ExampleId> Dataset::LabeledIds() const {
  std::vector<ExampleId> ids;
  for (const Example& e : examples) {
    if (e.labeled()) ids.push_back(e.id);
  }
  return ids;
}

std::unordered_map<ExampleId, std::size_t> Dataset::IdIndex() const {
  std::unordered_map<ExampleId, std::size_t> index;
  index.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    index.emplace(examples[i].id, i);
  }
  return index;
}

Dataset Dataset::WithSplit(Split split) const {
  Dataset out;
  out.num_classes = num_classes;
  for (const Example& e : examples) {
    if (e.split == split) out.examples.push_back(e);
  }
  return out;
}

Dataset ReadDataset(std::istream& in, Split split) {
  Dataset dataset;
  std::optional<std::size_t> declared_classes;
  std::size_t max_label_plus_one = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = TrimLineEnd(raw);
    if (line.starts_with(kNumClassesDirective)) {
      auto k = ParseUint(line.substr(kNumClassesDirective.size()));
      if (!k) throw ParseError(LineError(line_no, "bad num_classes directive"));
      declared_classes = *k;
      continue;
    }
    if (IsCommentOrBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    if (fields.size() < 3) {
      throw ParseError(LineError(line_no, "expected id, labels and features"));
    }
    Example example;
    example.split = split;
    auto id = ParseUint(fields[0]);
    if (!id) throw ParseError(LineError(line_no, "bad example id"));
    example.id = *id;
    if (!fields[1].empty()) {
      for (std::string_view item : SplitFields(fields[1], ',')) {
        auto label = ParseUint(item);
        if (!label || *label > std::numeric_limits<ClassId>::max()) {
          throw ParseError(LineError(line_no, "bad label '" + std::string(item) + "'"));
        }
        example.labels.push_back(static_cast<ClassId>(*label));
        max_label_plus_one = std::max<std::size_t>(max_label_plus_one, *label + 1);
      }
      std::sort(example.labels.begin(), example.labels.end());
      example.labels.erase(
          std::unique(example.labels.begin(), example.labels.end()),
          example.labels.end());
    }
    std::vector<double> features;
    features.reserve(fields.size() - 2);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      auto x = ParseDouble(fields[i]);
      if (!x) {
        throw ParseError(LineError(line_no, "bad feature value in column " +
                                                std::to_string(i + 1)));
      }
      features.push_back(*x);
    }
    example.features = DenseVector(std::move(features));
    if (!dataset.examples.empty() &&
        example.features.dim() != dataset.examples.front().features.dim()) {
      throw SchemaError(LineError(line_no, "feature dim " +
                                               std::to_string(example.features.dim()) +
                                               " differs from earlier lines"));
    }
    dataset.examples.push_back(std::move(example));
  }
  dataset.num_classes = declared_classes.value_or(max_label_plus_one);
  dataset.Validate();
  return dataset;
}

Dataset LoadDataset(const std::string& path, Split split) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path);
  return ReadDataset(in, split);
}

void WriteDataset(const Dataset& dataset, std::ostream& out) {
  out << kNumClassesDirective << dataset.num_classes << '\n';
  for (const Example& e : dataset.examples) {
    out << e.id << '\t';
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      if (i) out << ',';
      out << e.labels[i];
    }
    for (double x : e.features) out << '\t' << FormatDouble(x);
    out << '\n';
  }
}

void SaveDataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteDataset(dataset, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

void SyntheticConfig::Validate() const {
  if (num_classes < 2) throw InvalidArgumentError("num_classes must be at least 2");
  if (per_class == 0) throw InvalidArgumentError("per_class must be positive");
  if (dim == 0) throw InvalidArgumentError("dim must be positive");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw InvalidArgumentError("noise_sigma must be nonnegative");
  }
  CheckRate(unlabeled_fraction, "unlabeled_fraction");
  CheckRate(multilabel_rate, "multilabel_rate");
}

Dataset GenerateSynthetic(const SyntheticConfig& config, Prng& rng) {
  config.Validate();
  std::vector<DenseVector> centroids;
  centroids.reserve(config.num_classes);
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    DenseVector v(config.dim);
    double norm = 0.0;
    while (!(norm > 0.0)) {
      for (double& x : v) x = rng.Normal();
      norm = Norm(v.span());
    }
    for (double& x : v) x /= norm;
    centroids.push_back(std::move(v));
  }

  Dataset dataset;
  dataset.num_classes = config.num_classes;
  auto make_example = [&](ExampleId id, ClassId cls, Split split) {
    Example e;
    e.id = id;
    e.split = split;
    e.latent_class = cls;
    e.features = centroids[cls];
    for (double& x : e.features) x += config.noise_sigma * rng.Normal();
    e.labels = {cls};
    const bool second = rng.Uniform() < config.multilabel_rate;
    if (second) {
      ClassId nearest = cls;
      double best = std::numeric_limits<double>::infinity();
      for (ClassId other = 0; other < config.num_classes; ++other) {
        if (other == cls) continue;
        const double d = EuclideanDistance(e.features.span(), centroids[other].span());
        if (d < best) {
          best = d;
          nearest = other;
        }
      }
      e.labels.push_back(nearest);
      std::sort(e.labels.begin(), e.labels.end());
    }
    return e;
  };

  const std::size_t num_train = config.num_classes * config.per_class;
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    for (std::size_t i = 0; i < config.per_class; ++i) {
      dataset.examples.push_back(make_example(c * config.per_class + i,
                                              static_cast<ClassId>(c),
                                              Split::kTrain));
    }
  }
  const auto num_unlabeled = static_cast<std::size_t>(
      std::llround(config.unlabeled_fraction * static_cast<double>(num_train)));
  for (std::size_t idx : SampleWithoutReplacement(rng, num_train, num_unlabeled)) {
    dataset.examples[idx].labels.clear();
  }
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    for (std::size_t i = 0; i < config.query_per_class; ++i) {
      dataset.examples.push_back(make_example(
          num_train + c * config.query_per_class + i, static_cast<ClassId>(c),
          Split::kQuery));
    }
  }
  dataset.Validate();
  return dataset;
}

std::vector<DenseVector> ClassCentroids(const Dataset& dataset) {
  std::vector<DenseVector> sums(dataset.num_classes);
  std::vector<std::size_t> counts(dataset.num_classes, 0);
  for (const Example& e : dataset.examples) {
    for (ClassId c : e.labels) {
      if (sums[c].empty()) sums[c] = DenseVector(e.features.dim());
      Axpy(1.0, e.features.span(), sums[c].span());
      ++counts[c];
    }
  }
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (counts[c] == 0) continue;
    for (double& x : sums[c]) x /= static_cast<double>(counts[c]);
  }
  return sums;
}

void ClickLogConfig::Validate() const {
  CheckRate(intra_rate, "intra_rate");
  CheckRate(noise_rate, "noise_rate");
  CheckRate(similar_image_fraction, "similar_image_fraction");
}

std::vector<ClickLogRecord> GenerateClickLogs(const Dataset& dataset,
                                              const ClickLogConfig& config,
                                              Prng& rng) {
  config.Validate();
  std::vector<ClickLogRecord> records;
  if (config.intra_rate == 0.0) return records;

  // Training examples with a known class, grouped by class.
  std::vector<std::vector<const Example*>> by_class(dataset.num_classes);
  std::vector<const Example*> pool;
  for (const Example& e : dataset.examples) {
    if (e.split != Split::kTrain) continue;
    if (auto c = e.KnownClass()) {
      by_class[*c].push_back(&e);
      pool.push_back(&e);
    }
  }

  for (const Example* u : pool) {
    if (!u->labeled()) continue;
    const ClassId cls = *u->KnownClass();
    for (const Example* v : by_class[cls]) {
      if (v == u || !(rng.Uniform() < config.intra_rate)) continue;
      records.push_back(MakeRecord(u->id, v->id, true, config, rng));
      if (!(rng.Uniform() < config.noise_rate)) continue;
      if (pool.size() == by_class[cls].size()) continue;  // single class
      const Example* w = nullptr;
      do {
        w = pool[rng.UniformInt(pool.size())];
      } while (*w->KnownClass() == cls);
      records.push_back(MakeRecord(u->id, w->id, false, config, rng));
    }
  }
  return records;
}

}  // namespace graphreg
