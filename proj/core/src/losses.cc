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

#include "graphreg/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "graphreg/error.h"

namespace graphreg {

namespace {

void CheckSortedUnique(const ClassScores& scores, const char* what) {
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i - 1].id >= scores[i].id) {
      throw InvalidArgumentError(std::string(what) +
                                 ": class ids must be sorted and unique");
    }
  }
}

void CheckLogits(const ClassScores& logits) {
  if (logits.empty()) throw InvalidArgumentError("softmax: empty logits");
  CheckSortedUnique(logits, "softmax");
  for (const auto& z : logits) {
    if (!std::isfinite(z.value)) {
      throw InvalidArgumentError("softmax: non-finite logit for class " +
                                 std::to_string(z.id));
    }
  }
}

std::vector<ClassId> SortedIds(std::span<const ClassId> ids) {
  std::vector<ClassId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

double MaxValue(const ClassScores& scores) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& s : scores) m = std::max(m, s.value);
  return m;
}

void CheckDims(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidArgumentError("distance: dimension mismatch (" +
                               std::to_string(u.size()) + " vs " +
                               std::to_string(v.size()) + ")");
  }
}

}  // namespace

LabelDistribution LabelDistribution::FromMasses(ClassScores masses) {
  CheckSortedUnique(masses, "label distribution");
  double total = 0.0;
  for (const auto& m : masses) {
    if (!(m.value >= 0.0) || !std::isfinite(m.value)) {
      throw InvalidArgumentError("label distribution: negative or non-finite mass");
    }
    total += m.value;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgumentError("label distribution: masses sum to " +
                               std::to_string(total));
  }
  return LabelDistribution(std::move(masses));
}

double LabelDistribution::Mass(ClassId id) const {
  auto it = std::lower_bound(
      masses_.begin(), masses_.end(), id,
      [](const ClassValue& m, ClassId key) { return m.id < key; });
  return (it != masses_.end() && it->id == id) ? it->value : 0.0;
}

double LabelDistribution::Total() const {
  double total = 0.0;
  for (const auto& m : masses_) total += m.value;
  return total;
}

void SmoothingConfig::Validate(std::size_t num_classes) const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidArgumentError("epsilon must lie in [0, 1]");
  }
  if (sampled_vocab_size == 0 || sampled_vocab_size > num_classes) {
    throw InvalidArgumentError("sampled vocabulary size must lie in [1, " +
                               std::to_string(num_classes) + "]");
  }
}

LabelDistribution Softmax(const ClassScores& logits) {
  CheckLogits(logits);
  const double shift = MaxValue(logits);
  ClassScores p = logits;
  double denom = 0.0;
  for (auto& e : p) {
    e.value = std::exp(e.value - shift);
    denom += e.value;
  }
  for (auto& e : p) e.value /= denom;
  return LabelDistribution::FromMasses(std::move(p));
}

LabelDistribution SampledSoftmax(const ClassScores& logits_on_subset,
                                 std::span<const ClassId> subset) {
  const std::vector<ClassId> ids = SortedIds(subset);
  bool same = ids.size() == logits_on_subset.size();
  for (std::size_t i = 0; same && i < ids.size(); ++i) {
    same = ids[i] == logits_on_subset[i].id;
  }
  if (!same) {
    throw InvalidArgumentError(
        "sampled softmax: subset does not match the ids of the logits");
  }
  return Softmax(logits_on_subset);
}

ClassScores LogSoftmax(const ClassScores& logits) {
  CheckLogits(logits);
  const double shift = MaxValue(logits);
  double denom = 0.0;
  for (const auto& z : logits) denom += std::exp(z.value - shift);
  const double log_normalizer = shift + std::log(denom);
  ClassScores out = logits;
  for (auto& e : out) e.value -= log_normalizer;
  return out;
}

LabelDistribution GroundTruthDistribution(std::span<const ClassId> labels,
                                          std::span<const ClassId> subset) {
  if (labels.empty()) {
    throw InvalidArgumentError("ground truth: example has no labels");
  }
  std::vector<ClassId> gt = SortedIds(labels);
  gt.erase(std::unique(gt.begin(), gt.end()), gt.end());
  const std::vector<ClassId> ids = SortedIds(subset);
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidArgumentError("ground truth: duplicate id in label subset");
  }
  if (!std::includes(ids.begin(), ids.end(), gt.begin(), gt.end())) {
    throw PreconditionError(
        "ground truth: labels must be contained in the sampled subset");
  }
  const double share = 1.0 / static_cast<double>(gt.size());
  ClassScores q;
  q.reserve(ids.size());
  for (ClassId id : ids) {
    q.push_back({id, std::binary_search(gt.begin(), gt.end(), id) ? share : 0.0});
  }
  return LabelDistribution::FromMasses(std::move(q));
}

LabelDistribution Smooth(const LabelDistribution& q,
                         const SmoothingConfig& config) {
  if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
    throw InvalidArgumentError("epsilon must lie in [0, 1]");
  }
  if (q.support_size() != config.sampled_vocab_size) {
    throw InvalidArgumentError(
        "smooth: distribution support has " +
        std::to_string(q.support_size()) + " ids, sampled vocabulary has " +
        std::to_string(config.sampled_vocab_size));
  }
  const double uniform = 1.0 / static_cast<double>(config.sampled_vocab_size);
  ClassScores out = q.masses();
  for (auto& e : out) {
    e.value = (1.0 - config.epsilon) * e.value + config.epsilon * uniform;
  }
  return LabelDistribution::FromMasses(std::move(out));
}

double CrossEntropy(const LabelDistribution& p, const LabelDistribution& q) {
  double loss = 0.0;
  for (const auto& target : q.masses()) {
    if (target.value == 0.0) continue;
    const double prob = p.Mass(target.id);
    if (!(prob > 0.0)) {
      throw DegenerateInputError(
          "cross entropy: target has mass on class " +
          std::to_string(target.id) + " where the prediction has none");
    }
    loss -= std::log(prob) * target.value;
  }
  return loss;
}

double SoftmaxCrossEntropy(const ClassScores& logits,
                           const LabelDistribution& target) {
  const ClassScores log_p = LogSoftmax(logits);
  double loss = 0.0;
  auto it = log_p.begin();
  for (const auto& t : target.masses()) {
    while (it != log_p.end() && it->id < t.id) ++it;
    if (it == log_p.end() || it->id != t.id) {
      if (t.value == 0.0) continue;
      throw DegenerateInputError("cross entropy: target class " +
                                 std::to_string(t.id) +
                                 " is outside the logit support");
    }
    loss -= it->value * t.value;
  }
  return loss;
}

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  CheckDims(u, v);
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw DegenerateInputError("cosine distance of a zero vector");
  }
  const double cosine = std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
  return 1.0 - cosine;
}

double EuclideanDistance(std::span<const double> u, std::span<const double> v) {
  CheckDims(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double Distance(Metric metric, std::span<const double> u,
                std::span<const double> v) {
  return metric == Metric::kCosine ? CosineDistance(u, v)
                                   : EuclideanDistance(u, v);
}

double GraphRegularizer(std::span<const EmbeddingPair> pairs, Metric metric) {
  double omega = 0.0;
  for (const auto& pair : pairs) {
    if (!(pair.weight > 0.0)) {
      throw InvalidArgumentError("graph regularizer: edge weights must be positive");
    }
    omega += pair.weight * Distance(metric, pair.u, pair.v);
  }
  return omega;
}

LossBreakdown TotalObjective(double supervised, double graph, double alpha) {
  if (!(alpha >= 0.0)) {
    throw InvalidArgumentError("alpha must be nonnegative");
  }
  return LossBreakdown{supervised, graph, supervised + alpha * graph, alpha};
}

DistanceGradient DistanceGrad(Metric metric, std::span<const double> u,
                              std::span<const double> v) {
  CheckDims(u, v);
  const std::size_t n = u.size();
  DistanceGradient g{DenseVector(n), DenseVector(n)};
  if (metric == Metric::kCosine) {
    const double nu = Norm(u);
    const double nv = Norm(v);
    if (!(nu > 0.0) || !(nv > 0.0)) {
      throw DegenerateInputError("cosine distance gradient at a zero vector");
    }
    const double inv = 1.0 / (nu * nv);
    const double cosine = Dot(u, v) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      g.grad_u[i] = -(v[i] * inv - cosine * u[i] / (nu * nu));
      g.grad_v[i] = -(u[i] * inv - cosine * v[i] / (nv * nv));
    }
  } else {
    const double r = EuclideanDistance(u, v);
    if (r > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        g.grad_u[i] = (u[i] - v[i]) / r;
        g.grad_v[i] = -g.grad_u[i];
      }
    }
  }
  return g;
}

LossGradients ComputeLossGradients(const LabelDistribution& predicted,
                                   const LabelDistribution& target,
                                   std::span<const EmbeddingPair> pairs,
                                   double alpha, Metric metric) {
  const ClassScores& p = predicted.masses();
  const ClassScores& q = target.masses();
  if (p.size() != q.size()) {
    throw InvalidArgumentError("loss gradients: supports differ in size");
  }
  LossGradients out;
  out.logits.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].id != q[i].id) {
      throw InvalidArgumentError("loss gradients: supports are not aligned");
    }
    out.logits.push_back({p[i].id, p[i].value - q[i].value});
  }
  out.pairs.reserve(pairs.size());
  for (const auto& pair : pairs) {
    DistanceGradient g = DistanceGrad(metric, pair.u, pair.v);
    const double scale = alpha * pair.weight;
    for (double& x : g.grad_u) x *= scale;
    for (double& x : g.grad_v) x *= scale;
    out.pairs.push_back(std::move(g));
  }
  return out;
}

}  // namespace graphreg
