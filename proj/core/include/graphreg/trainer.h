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

// Training loop for the graph-regularized objective
//
//   R(theta) = sum_i CE(p'_i, q'_i) + alpha * sum_(u,v) w_uv d(phi(u), phi(v))
//
// where p'_i is the softmax over the example's sampled label subset, q'_i the
// smoothed ground truth, and the second sum runs over (example, neighbor)
// pairs drawn from the similarity graph. Both sums are over the batch, not
// averaged.
//
// Every step draws its batch from a generator seeded by (seed, step), and
// the batch itself splits that into separate streams for example choice,
// label subsets and neighbors. A run is therefore reproducible bit for bit,
// resumable at any step, and an alpha = 0 run follows exactly the same
// trajectory as a run without a graph.

#ifndef GRAPHREG_TRAINER_H_
#define GRAPHREG_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphreg/dataio.h"
#include "graphreg/graph.h"
#include "graphreg/losses.h"
#include "graphreg/model.h"
#include "graphreg/numerics.h"

namespace graphreg {

enum class NeighborMode {
  // One weight-proportional neighbor per example per step.
  kSampledOne,
  // Every incident edge of the example.
  kAllEdges,
};

// alpha applies to steps [previous end, end_step).
struct AlphaPhase {
  std::size_t end_step = 0;
  double alpha = 0.0;
};

struct TrainConfig {
  double alpha = 1.0;
  double epsilon = 0.1;
  std::size_t batch_size = 24;
  // Size of the per-example label subset; 0 selects the full vocabulary.
  std::size_t sampled_vocab = 0;
  double lr0 = 0.001;
  double decay_rate = 0.9;
  std::size_t decay_every = 100000;
  double momentum = 0.9;
  double weight_decay = 0.00004;
  Metric metric = Metric::kCosine;
  std::size_t max_steps = 1000;
  std::uint64_t seed = 1;
  // 0 disables periodic checkpoints.
  std::size_t checkpoint_every = 0;
  // Optional alpha schedule; steps past the last phase use alpha.
  std::vector<AlphaPhase> phases;
  NeighborMode neighbor_mode = NeighborMode::kSampledOne;

  // Throws InvalidArgumentError on out-of-range values.
  void Validate() const;
  double AlphaAt(std::size_t step) const;
  std::size_t SampledVocab(std::size_t num_classes) const;
};

// lr0 * decay_rate^floor(step / decay_every).
double LearningRate(const TrainConfig& config, std::size_t step);

struct OptimizerState {
  ModelParams velocity;
  std::size_t step = 0;

  static OptimizerState Zeros(const ModelConfig& config);
};

// v <- momentum * v + (g + weight_decay * theta); theta <- theta - lr * v.
// Throws DivergenceError before touching anything if grad is not finite.
void MomentumStep(ModelParams& params, const ModelGradient& grad,
                  OptimizerState& state, double lr, double momentum,
                  double weight_decay);

// Dataset view used by batching: labeled examples and an id index.
class TrainingSet {
 public:
  // Throws InvalidArgumentError when the dataset has no labeled example.
  explicit TrainingSet(const Dataset& dataset);

  const Dataset& dataset() const { return *dataset_; }
  const std::vector<std::size_t>& labeled() const { return labeled_; }
  std::size_t max_label_count() const { return max_label_count_; }
  // nullptr for unknown ids.
  const Example* Find(ExampleId id) const;

 private:
  const Dataset* dataset_;
  std::vector<std::size_t> labeled_;
  std::size_t max_label_count_ = 0;
  std::unordered_map<ExampleId, std::size_t> index_;
};

struct NeighborRef {
  const Example* example = nullptr;
  double weight = 0.0;
};

struct BatchElement {
  const Example* example = nullptr;
  std::vector<NeighborRef> neighbors;
  // Sorted; always contains every label of example.
  std::vector<ClassId> label_subset;
};

struct Batch {
  std::vector<BatchElement> elements;
};

// batch_size labeled examples drawn uniformly with replacement, each with
// its neighbor(s) and a label subset of size sampled_vocab that contains all
// of its labels. graph may be null. Throws InvalidArgumentError when
// sampled_vocab is smaller than an example's label count or larger than the
// vocabulary, and SchemaError when a graph neighbor is not in the dataset.
Batch MakeBatch(const TrainingSet& data, const SimilarityGraph* graph,
                Prng& rng, std::size_t batch_size, std::size_t sampled_vocab,
                NeighborMode mode = NeighborMode::kSampledOne);

enum class DistributionKind { kPredicted, kGroundTruth, kSmoothed };

// Sees every label distribution the objective produces.
using DistributionObserver =
    std::function<void(DistributionKind, const LabelDistribution&)>;

struct ObjectiveConfig {
  double alpha = 1.0;
  double epsilon = 0.1;
  Metric metric = Metric::kCosine;
};

struct BatchGradient {
  LossBreakdown loss;
  ModelGradient grad;
};

// Objective value only.
LossBreakdown EvaluateObjective(const ModelParams& params, const Batch& batch,
                                const ObjectiveConfig& config);

// Objective value and its exact gradient. When alpha == 0 the graph term is
// still evaluated (for telemetry) but not differentiated.
BatchGradient ComputeBatchGradient(const ModelParams& params,
                                   const Batch& batch,
                                   const ObjectiveConfig& config,
                                   const DistributionObserver& observer = {});

struct TrainRecord {
  std::size_t step = 0;
  double learning_rate = 0.0;
  LossBreakdown loss;
  double seconds = 0.0;
};

// One optimizer update on the given batch at state.step. Throws
// DivergenceError on a non-finite loss or gradient.
TrainRecord TrainStep(ModelParams& params, OptimizerState& state,
                      const Batch& batch, const TrainConfig& config,
                      const DistributionObserver& observer = {});

struct TrainOptions {
  DistributionObserver observer;
  std::function<void(const TrainRecord&)> on_record;
  // Called after every checkpoint_every-th step.
  std::function<void(const ModelParams&, const OptimizerState&)> on_checkpoint;
  // Resume from these instead of a fresh initialization.
  std::optional<ModelParams> initial_params;
  std::optional<OptimizerState> initial_state;
};

struct TrainResult {
  ModelParams params;
  OptimizerState state;
  std::vector<TrainRecord> log;
};

// Runs steps state.step .. max_steps - 1. graph may be null, which is the
// purely discriminative path.
TrainResult Train(const Dataset& dataset, const SimilarityGraph* graph,
                  const ModelConfig& model_config, const TrainConfig& config,
                  const TrainOptions& options = {});

// Same initialization Train uses for this seed.
ModelParams InitialParams(const ModelConfig& model_config, std::uint64_t seed);

// step<TAB>lr<TAB>supervised<TAB>graph<TAB>total<TAB>seconds
void WriteTrainLog(const std::vector<TrainRecord>& log, std::ostream& out);

struct LabelPropagationOptions {
  std::size_t max_iterations = 1000;
  bool clamp = true;
  // Stop once the largest per-entry change of an iteration is below this.
  double tolerance = 1e-12;
};

struct LabelPropagationResult {
  // Dense over [0, num_classes) for every vertex.
  std::map<ExampleId, LabelDistribution> distributions;
  std::size_t iterations = 0;
  double last_change = 0.0;
};

// Jacobi iteration of weighted neighbor averaging. Unlabeled vertices start
// uniform; labeled vertices start at (and with clamp stay at) their given
// distribution; isolated vertices keep their value. Throws
// InvalidArgumentError when labeled is empty or names a class >=
// num_classes.
LabelPropagationResult PropagateLabels(
    const SimilarityGraph& graph,
    const std::map<ExampleId, LabelDistribution>& labeled,
    std::size_t num_classes, const LabelPropagationOptions& options = {});

}  // namespace graphreg

#endif  // GRAPHREG_TRAINER_H_
