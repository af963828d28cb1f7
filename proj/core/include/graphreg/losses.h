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

// Objective-function math for graph-regularized classification training:
// full and sampled softmax, ground-truth and smoothed label distributions,
// cross-entropy, embedding distances, the weighted neighbor-distance
// regularizer, and the analytic gradients of all of these.

#ifndef GRAPHREG_LOSSES_H_
#define GRAPHREG_LOSSES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "graphreg/numerics.h"
#include "graphreg/types.h"

namespace graphreg {

// Probability mass over a finite support of class ids. Masses are
// nonnegative and sum to one; ids are sorted and unique.
class LabelDistribution {
 public:
  // Validates the invariants (sum checked to 1e-9) and throws
  // InvalidArgumentError when they fail.
  static LabelDistribution FromMasses(ClassScores masses);

  const ClassScores& masses() const { return masses_; }
  std::size_t support_size() const { return masses_.size(); }
  // 0 for ids outside the support.
  double Mass(ClassId id) const;
  double Total() const;

 private:
  explicit LabelDistribution(ClassScores masses) : masses_(std::move(masses)) {}
  ClassScores masses_;
};

struct SmoothingConfig {
  double epsilon = 0.1;
  std::size_t sampled_vocab_size = 0;

  // Throws InvalidArgumentError unless 0 <= epsilon <= 1 and
  // 1 <= sampled_vocab_size <= num_classes.
  void Validate(std::size_t num_classes) const;
};

// p(k) = exp(z_k) / sum_i exp(z_i), evaluated with max subtraction. Throws
// InvalidArgumentError on empty or non-finite input.
LabelDistribution Softmax(const ClassScores& logits);

// Softmax normalized over the sampled subset only. subset must be exactly the
// ids present in logits_on_subset (any order).
LabelDistribution SampledSoftmax(const ClassScores& logits_on_subset,
                                 std::span<const ClassId> subset);

// log p(k) in log-sum-exp form; stays finite where exp would underflow.
ClassScores LogSoftmax(const ClassScores& logits);

// Uniform mass on the ground-truth labels, zero on the rest of subset.
// Throws InvalidArgumentError on empty labels, PreconditionError when a label
// is missing from subset.
LabelDistribution GroundTruthDistribution(std::span<const ClassId> labels,
                                          std::span<const ClassId> subset);

// q'(k) = (1 - eps) q(k) + eps / |L|. q's support must have |L| entries.
LabelDistribution Smooth(const LabelDistribution& q,
                         const SmoothingConfig& config);

// -sum_k q(k) log p(k). Throws DegenerateInputError when q puts mass where p
// has none.
double CrossEntropy(const LabelDistribution& p, const LabelDistribution& q);

// Same quantity with p = softmax(logits), computed from LogSoftmax. The
// target's support must be contained in the logits' ids.
double SoftmaxCrossEntropy(const ClassScores& logits,
                           const LabelDistribution& target);

// 1 - cos(u, v), in [0, 2]. Throws DegenerateInputError on a zero vector and
// InvalidArgumentError on a dimension mismatch.
double CosineDistance(std::span<const double> u, std::span<const double> v);
double EuclideanDistance(std::span<const double> u, std::span<const double> v);
double Distance(Metric metric, std::span<const double> u,
                std::span<const double> v);

struct EmbeddingPair {
  std::span<const double> u;
  std::span<const double> v;
  double weight = 0.0;
};

// sum_(u,v) w_uv d(u, v). Throws InvalidArgumentError on a nonpositive
// weight.
double GraphRegularizer(std::span<const EmbeddingPair> pairs, Metric metric);

struct LossBreakdown {
  double supervised = 0.0;
  double graph = 0.0;
  double total = 0.0;
  double alpha = 0.0;
};

// total = supervised + alpha * graph. Throws InvalidArgumentError on
// alpha < 0.
LossBreakdown TotalObjective(double supervised, double graph, double alpha);

struct DistanceGradient {
  DenseVector grad_u;
  DenseVector grad_v;
};

// Gradient of d(u, v) with respect to both operands. For the Euclidean
// metric the subgradient at u == v is taken as zero.
DistanceGradient DistanceGrad(Metric metric, std::span<const double> u,
                              std::span<const double> v);

struct LossGradients {
  // p' - q' on the shared support.
  ClassScores logits;
  // alpha * w_uv * dd/du and dd/dv, one entry per input pair.
  std::vector<DistanceGradient> pairs;
};

// Gradients of cross_entropy(p', q') + alpha * Omega for one example, where
// p' is the (sampled) softmax of the logits. p' and q' must share a support.
LossGradients ComputeLossGradients(const LabelDistribution& predicted,
                                   const LabelDistribution& target,
                                   std::span<const EmbeddingPair> pairs,
                                   double alpha, Metric metric);

}  // namespace graphreg

#endif  // GRAPHREG_LOSSES_H_
