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

#include "graphreg/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphreg/error.h"
#include "graphreg/eval.h"

namespace graphreg {

namespace {

constexpr double kKinkMargin = 1e-3;

constexpr double kMinEmbeddingNorm = 0.1;
constexpr int kMaxDraws = 10000;

// Inputs close to a ReLU-6 kink or mapping to a near-zero embedding make
// central differences unreliable.
bool Unsuitable(const ModelParams& params, const DenseVector& x) {
  const ForwardTrace trace = Forward(params, x);
  if (Norm(trace.embedding.span()) < kMinEmbeddingNorm) return true;
  for (const DenseVector& pre : trace.pre_activations) {
    for (double p : pre) {
      if (std::abs(p) < kKinkMargin || std::abs(p - 6.0) < kKinkMargin) {
        return true;
      }
    }
  }
  return false;
}

std::size_t Between(Prng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.UniformInt(hi - lo + 1);
}

}  // namespace

double GradCheckError(double analytic, double numeric) {
  const double scale =
      std::max({std::abs(analytic), std::abs(numeric), kGradCheckFloor});
  return std::abs(analytic - numeric) / scale;
}

double CheckBatchGradient(const ModelParams& params, const Batch& batch,
                          const ObjectiveConfig& objective, double step,
                          bool negate_analytic) {
  const BatchGradient analytic = ComputeBatchGradient(params, batch, objective);
  const auto grad_blocks = analytic.grad.Blocks();
  ModelParams probe = params;
  auto blocks = probe.Blocks();
  double worst = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      const double original = blocks[b][i];
      blocks[b][i] = original + step;
      const double plus = EvaluateObjective(probe, batch, objective).total;
      blocks[b][i] = original - step;
      const double minus = EvaluateObjective(probe, batch, objective).total;
      blocks[b][i] = original;
      const double numeric = (plus - minus) / (2.0 * step);
      const double a = negate_analytic ? -grad_blocks[b][i] : grad_blocks[b][i];
      worst = std::max(worst, GradCheckError(a, numeric));
    }
  }
  return worst;
}

GradCheckReport RunGradCheck(const GradCheckConfig& config) {
  GradCheckReport report;
  Prng rng(config.seed);
  for (std::size_t net = 0; net < config.nets; ++net) {
    const Metric metric = config.metrics[net % config.metrics.size()];
    ModelConfig mc;
    mc.input_dim = Between(rng, 2, 8);
    const std::size_t depth = Between(rng, 0, 2);
    for (std::size_t l = 0; l < depth; ++l) mc.hidden_dims.push_back(Between(rng, 2, 8));
    mc.embedding_dim = Between(rng, 2, 8);
    mc.num_classes = Between(rng, 2, 16);
    ModelParams params = InitParams(mc, rng);
    for (LinearLayer& layer : params.layers) {
      for (double& b : layer.bias) b = 0.5 * rng.Normal();
    }
    for (double& b : params.head.bias) b = 0.5 * rng.Normal();

    // batch_size anchors plus as many candidate neighbors.
    Dataset dataset;
    dataset.num_classes = mc.num_classes;
    const std::size_t pool = 2 * config.batch_size;
    for (std::size_t i = 0; i < pool; ++i) {
      Example e;
      e.id = i;
      e.features = DenseVector(mc.input_dim);
      int draws = 0;
      do {
        if (++draws > kMaxDraws) {
          throw PreconditionError("gradcheck: no usable input for net " +
                                  std::to_string(net));
        }
        for (double& x : e.features) x = 1.5 * rng.Normal();
      } while (Unsuitable(params, e.features));
      const std::size_t num_labels = mc.num_classes > 2 ? Between(rng, 1, 2) : 1;
      for (std::size_t idx : SampleWithoutReplacement(rng, mc.num_classes, num_labels)) {
        e.labels.push_back(static_cast<ClassId>(idx));
      }
      dataset.examples.push_back(std::move(e));
    }

    Batch batch;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < config.batch_size; ++i) {
      BatchElement element;
      element.example = &dataset.examples[i];
      const std::size_t vocab =
          Between(rng, element.example->labels.size(), mc.num_classes);
      const std::size_t num_others = vocab - element.example->labels.size();
      std::vector<ClassId> others;
      for (ClassId c = 0; c < mc.num_classes; ++c) {
        if (!std::binary_search(element.example->labels.begin(),
                                element.example->labels.end(), c)) {
          others.push_back(c);
        }
      }
      element.label_subset = element.example->labels;
      for (std::size_t idx : SampleWithoutReplacement(rng, others.size(), num_others)) {
        element.label_subset.push_back(others[idx]);
      }
      std::sort(element.label_subset.begin(), element.label_subset.end());
      const std::size_t num_neighbors = Between(rng, 0, 2);
      for (std::size_t n = 0; n < num_neighbors; ++n) {
        const Example* neighbor =
            &dataset.examples[config.batch_size + rng.UniformInt(config.batch_size)];
        element.neighbors.push_back({neighbor, 0.1 + 0.9 * rng.Uniform()});
        ++pairs;
      }
      batch.elements.push_back(std::move(element));
    }

    const ObjectiveConfig objective{config.alpha, 0.1, metric};
    GradCheckCase result;
    std::ostringstream desc;
    desc << "net " << net << ": input " << mc.input_dim << ", hidden [";
    for (std::size_t l = 0; l < mc.hidden_dims.size(); ++l) {
      desc << (l ? "," : "") << mc.hidden_dims[l];
    }
    desc << "], embedding " << mc.embedding_dim << ", K " << mc.num_classes
         << ", " << MetricName(metric) << ", alpha " << config.alpha;
    result.description = desc.str();
    result.parameters = params.ParameterCount();
    result.pairs = pairs;
    result.max_rel_error = CheckBatchGradient(params, batch, objective,
                                              config.step,
                                              config.inject_sign_flip);
    report.max_rel_error = std::max(report.max_rel_error, result.max_rel_error);
    report.cases.push_back(std::move(result));
  }
  report.passed = !report.cases.empty() && report.max_rel_error <= config.tolerance;
  return report;
}

}  // namespace graphreg
