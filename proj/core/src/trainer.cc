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

#include "graphreg/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "graphreg/error.h"
#include "graphreg/text_util.h"

namespace graphreg {

namespace {

// Stream keys for Prng::DeriveSeed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBatchStream = 2;

std::vector<ClassId> SampleLabelSubset(const std::vector<ClassId>& labels,
                                       std::size_t num_classes,
                                       std::size_t sampled_vocab, Prng& rng) {
  const std::size_t others = sampled_vocab - labels.size();
  std::vector<ClassId> subset = labels;
  subset.reserve(sampled_vocab);
  // Map the r-th draw onto the r-th class that is not a label.
  for (std::size_t r :
       SampleWithoutReplacement(rng, num_classes - labels.size(), others)) {
    auto cls = static_cast<ClassId>(r);
    for (ClassId label : labels) {
      if (label <= cls) ++cls;
    }
    subset.push_back(cls);
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

LossBreakdown RunObjective(const ModelParams& params, const Batch& batch,
                           const ObjectiveConfig& config,
                           const DistributionObserver& observer,
                           ModelGradient* grad) {
  double supervised = 0.0;
  double omega = 0.0;
  const bool graph_grad = grad != nullptr && config.alpha > 0.0;
  for (const BatchElement& element : batch.elements) {
    const ForwardTrace trace = Forward(params, element.example->features);
    const ClassScores logits =
        Logits(params, trace.embedding, element.label_subset);
    for (const ClassValue& z : logits) {
      if (!std::isfinite(z.value)) {
        throw DivergenceError("non-finite logit for example " +
                              std::to_string(element.example->id));
      }
    }
    const LabelDistribution predicted =
        SampledSoftmax(logits, element.label_subset);
    const LabelDistribution truth =
        GroundTruthDistribution(element.example->labels, element.label_subset);
    const LabelDistribution target = Smooth(
        truth, SmoothingConfig{config.epsilon, element.label_subset.size()});
    if (observer) {
      observer(DistributionKind::kPredicted, predicted);
      observer(DistributionKind::kGroundTruth, truth);
      observer(DistributionKind::kSmoothed, target);
    }
    supervised += SoftmaxCrossEntropy(logits, target);

    std::vector<ForwardTrace> neighbor_traces;
    std::vector<EmbeddingPair> pairs;
    neighbor_traces.reserve(element.neighbors.size());
    for (const NeighborRef& n : element.neighbors) {
      neighbor_traces.push_back(Forward(params, n.example->features));
      if (!neighbor_traces.back().embedding.AllFinite()) {
        throw DivergenceError("non-finite embedding for example " +
                              std::to_string(n.example->id));
      }
    }
    for (std::size_t i = 0; i < element.neighbors.size(); ++i) {
      pairs.push_back(EmbeddingPair{trace.embedding.span(),
                                    neighbor_traces[i].embedding.span(),
                                    element.neighbors[i].weight});
    }
    omega += GraphRegularizer(pairs, config.metric);

    if (grad == nullptr) continue;
    const LossGradients g = ComputeLossGradients(
        predicted, target,
        graph_grad ? std::span<const EmbeddingPair>(pairs)
                   : std::span<const EmbeddingPair>(),
        config.alpha, config.metric);
    DenseVector grad_embedding(params.config.embedding_dim);
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
      Axpy(1.0, g.pairs[i].grad_u.span(), grad_embedding.span());
      AccumulateBackward(params, neighbor_traces[i], g.pairs[i].grad_v, {},
                         *grad);
    }
    AccumulateBackward(params, trace, grad_embedding, g.logits, *grad);
  }
  return TotalObjective(supervised, omega, config.alpha);
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgumentError(what); };
  if (!(alpha >= 0.0)) fail("alpha must be nonnegative");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
  if (batch_size == 0) fail("batch_size must be positive");
  if (!(lr0 > 0.0) || !std::isfinite(lr0)) fail("lr0 must be positive");
  if (!(decay_rate > 0.0 && decay_rate <= 1.0)) {
    fail("decay_rate must lie in (0, 1]");
  }
  if (decay_every == 0) fail("decay_every must be at least 1");
  if (!(momentum >= 0.0 && momentum < 1.0)) fail("momentum must lie in [0, 1)");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be nonnegative");
  std::size_t previous = 0;
  for (const AlphaPhase& phase : phases) {
    if (phase.end_step <= previous) {
      fail("alpha phases must have strictly increasing end steps");
    }
    if (!(phase.alpha >= 0.0)) fail("phase alpha must be nonnegative");
    previous = phase.end_step;
  }
}

double TrainConfig::AlphaAt(std::size_t step) const {
  for (const AlphaPhase& phase : phases) {
    if (step < phase.end_step) return phase.alpha;
  }
  return alpha;
}

std::size_t TrainConfig::SampledVocab(std::size_t num_classes) const {
  return sampled_vocab == 0 ? num_classes : sampled_vocab;
}

double LearningRate(const TrainConfig& config, std::size_t step) {
  const auto stairs = static_cast<double>(step / config.decay_every);
  return config.lr0 * std::pow(config.decay_rate, stairs);
}

OptimizerState OptimizerState::Zeros(const ModelConfig& config) {
  return OptimizerState{ModelParams::Zeros(config), 0};
}

void MomentumStep(ModelParams& params, const ModelGradient& grad,
                  OptimizerState& state, double lr, double momentum,
                  double weight_decay) {
  params.CheckSameShape(grad);
  params.CheckSameShape(state.velocity);
  if (!grad.AllFinite()) {
    throw DivergenceError("non-finite gradient at step " +
                          std::to_string(state.step));
  }
  auto theta = params.Blocks();
  const auto g = grad.Blocks();
  auto v = state.velocity.Blocks();
  for (std::size_t b = 0; b < theta.size(); ++b) {
    for (std::size_t i = 0; i < theta[b].size(); ++i) {
      v[b][i] = momentum * v[b][i] + (g[b][i] + weight_decay * theta[b][i]);
      theta[b][i] -= lr * v[b][i];
    }
  }
  ++state.step;
}

TrainingSet::TrainingSet(const Dataset& dataset) : dataset_(&dataset) {
  index_ = dataset.IdIndex();
  for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
    const Example& e = dataset.examples[i];
    if (!e.labeled()) continue;
    labeled_.push_back(i);
    max_label_count_ = std::max(max_label_count_, e.labels.size());
  }
  if (labeled_.empty()) {
    throw InvalidArgumentError("training set has no labeled examples");
  }
}

const Example* TrainingSet::Find(ExampleId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &dataset_->examples[it->second];
}

Batch MakeBatch(const TrainingSet& data, const SimilarityGraph* graph,
                Prng& rng, std::size_t batch_size, std::size_t sampled_vocab,
                NeighborMode mode) {
  const std::size_t num_classes = data.dataset().num_classes;
  if (batch_size == 0) throw InvalidArgumentError("batch_size must be positive");
  if (sampled_vocab > num_classes) {
    throw InvalidArgumentError("sampled_vocab " + std::to_string(sampled_vocab) +
                               " exceeds the vocabulary size " +
                               std::to_string(num_classes));
  }
  if (sampled_vocab < data.max_label_count()) {
    throw InvalidArgumentError(
        "sampled_vocab " + std::to_string(sampled_vocab) +
        " cannot hold an example with " +
        std::to_string(data.max_label_count()) + " labels");
  }
  // Independent streams so that the graph never perturbs the other draws.
  Prng pick_rng(rng.NextU64());
  Prng label_rng(rng.NextU64());
  Prng neighbor_rng(rng.NextU64());

  Batch batch;
  batch.elements.reserve(batch_size);
  const auto& labeled = data.labeled();
  for (std::size_t b = 0; b < batch_size; ++b) {
    BatchElement element;
    element.example =
        &data.dataset().examples[labeled[pick_rng.UniformInt(labeled.size())]];
    element.label_subset = SampleLabelSubset(
        element.example->labels, num_classes, sampled_vocab, label_rng);
    const ExampleId id = element.example->id;
    if (graph != nullptr && graph->HasVertex(id)) {
      std::vector<Neighbor> chosen;
      if (mode == NeighborMode::kSampledOne) {
        if (auto n = SampleNeighbor(*graph, id, neighbor_rng)) chosen.push_back(*n);
      } else {
        const auto all = graph->Neighbors(id);
        chosen.assign(all.begin(), all.end());
      }
      for (const Neighbor& n : chosen) {
        const Example* neighbor = data.Find(n.id);
        if (neighbor == nullptr) {
          throw SchemaError("graph neighbor " + std::to_string(n.id) +
                            " is not in the dataset");
        }
        element.neighbors.push_back(NeighborRef{neighbor, n.weight});
      }
    }
    batch.elements.push_back(std::move(element));
  }
  return batch;
}

LossBreakdown EvaluateObjective(const ModelParams& params, const Batch& batch,
                                const ObjectiveConfig& config) {
  return RunObjective(params, batch, config, {}, nullptr);
}

BatchGradient ComputeBatchGradient(const ModelParams& params,
                                   const Batch& batch,
                                   const ObjectiveConfig& config,
                                   const DistributionObserver& observer) {
  BatchGradient out{LossBreakdown{}, ModelParams::Zeros(params.config)};
  out.loss = RunObjective(params, batch, config, observer, &out.grad);
  return out;
}

TrainRecord TrainStep(ModelParams& params, OptimizerState& state,
                      const Batch& batch, const TrainConfig& config,
                      const DistributionObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  TrainRecord record;
  record.step = state.step;
  record.learning_rate = LearningRate(config, state.step);
  const ObjectiveConfig objective{config.AlphaAt(state.step), config.epsilon,
                                  config.metric};
  BatchGradient g = ComputeBatchGradient(params, batch, objective, observer);
  if (!std::isfinite(g.loss.total)) {
    throw DivergenceError("non-finite loss at step " +
                          std::to_string(state.step) + " (supervised " +
                          FormatDouble(g.loss.supervised) + ", graph " +
                          FormatDouble(g.loss.graph) + ")");
  }
  MomentumStep(params, g.grad, state, record.learning_rate, config.momentum,
               config.weight_decay);
  record.loss = g.loss;
  record.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return record;
}

ModelParams InitialParams(const ModelConfig& model_config, std::uint64_t seed) {
  Prng rng(Prng::DeriveSeed(seed, kInitStream));
  return InitParams(model_config, rng);
}

TrainResult Train(const Dataset& dataset, const SimilarityGraph* graph,
                  const ModelConfig& model_config, const TrainConfig& config,
                  const TrainOptions& options) {
  config.Validate();
  model_config.Validate();
  if (dataset.dim() != model_config.input_dim) {
    throw SchemaError("dataset feature dim " + std::to_string(dataset.dim()) +
                      " does not match model input_dim " +
                      std::to_string(model_config.input_dim));
  }
  if (dataset.num_classes != model_config.num_classes) {
    throw SchemaError("dataset has " + std::to_string(dataset.num_classes) +
                      " classes, model has " +
                      std::to_string(model_config.num_classes));
  }
  const TrainingSet data(dataset);
  if (graph != nullptr) {
    for (const Edge& e : graph->edges()) {
      if (data.Find(e.u) == nullptr || data.Find(e.v) == nullptr) {
        throw SchemaError("graph edge " + std::to_string(e.u) + "-" +
                          std::to_string(e.v) +
                          " references an example outside the dataset");
      }
    }
  }

  TrainResult result;
  result.params = options.initial_params
                      ? *options.initial_params
                      : InitialParams(model_config, config.seed);
  result.state = options.initial_state ? *options.initial_state
                                       : OptimizerState::Zeros(model_config);
  result.params.CheckSameShape(ModelParams::Zeros(model_config));
  result.params.CheckSameShape(result.state.velocity);
  if (result.state.step > config.max_steps) {
    throw InvalidArgumentError("resume step lies beyond max_steps");
  }

  const std::size_t sampled_vocab = config.SampledVocab(dataset.num_classes);
  while (result.state.step < config.max_steps) {
    Prng rng(Prng::DeriveSeed(config.seed, kBatchStream, result.state.step));
    const Batch batch = MakeBatch(data, graph, rng, config.batch_size,
                                  sampled_vocab, config.neighbor_mode);
    TrainRecord record = TrainStep(result.params, result.state, batch, config,
                                   options.observer);
    if (options.on_record) options.on_record(record);
    result.log.push_back(record);
    if (config.checkpoint_every != 0 &&
        result.state.step % config.checkpoint_every == 0 &&
        options.on_checkpoint) {
      options.on_checkpoint(result.params, result.state);
    }
  }
  return result;
}

void WriteTrainLog(const std::vector<TrainRecord>& log, std::ostream& out) {
  out << "# step\tlr\tsupervised\tgraph\ttotal\tseconds\n";
  for (const TrainRecord& r : log) {
    out << r.step << '\t' << FormatDouble(r.learning_rate) << '\t'
        << FormatDouble(r.loss.supervised) << '\t'
        << FormatDouble(r.loss.graph) << '\t' << FormatDouble(r.loss.total)
        << '\t' << FormatDouble(r.seconds) << '\n';
  }
}

LabelPropagationResult PropagateLabels(
    const SimilarityGraph& graph,
    const std::map<ExampleId, LabelDistribution>& labeled,
    std::size_t num_classes, const LabelPropagationOptions& options) {
  if (labeled.empty()) {
    throw InvalidArgumentError("label propagation needs a labeled vertex");
  }
  if (num_classes == 0) throw InvalidArgumentError("num_classes must be positive");

  std::vector<ExampleId> vertices = graph.vertices();
  for (const auto& [id, dist] : labeled) vertices.push_back(id);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::unordered_map<ExampleId, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);

  const std::size_t n = vertices.size();
  std::vector<std::vector<double>> current(
      n, std::vector<double>(num_classes, 1.0 / static_cast<double>(num_classes)));
  std::vector<std::vector<double>> clamped(n);
  for (const auto& [id, dist] : labeled) {
    std::vector<double> dense(num_classes, 0.0);
    for (const ClassValue& m : dist.masses()) {
      if (m.id >= num_classes) {
        throw InvalidArgumentError("labeled distribution names class " +
                                   std::to_string(m.id) + " >= num_classes");
      }
      dense[m.id] = m.value;
    }
    current[index.at(id)] = dense;
    clamped[index.at(id)] = std::move(dense);
  }

  LabelPropagationResult result;
  std::vector<std::vector<double>> next = current;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double>& out = next[i];
      const bool is_labeled = !clamped[i].empty();
      const bool has_neighbors =
          graph.HasVertex(vertices[i]) && !graph.Neighbors(vertices[i]).empty();
      if ((options.clamp && is_labeled) || !has_neighbors) {
        out = current[i];
      } else {
        std::fill(out.begin(), out.end(), 0.0);
        for (const Neighbor& nb : graph.Neighbors(vertices[i])) {
          Axpy(nb.weight, current[index.at(nb.id)], out);
        }
        double total = 0.0;
        for (double x : out) total += x;
        for (double& x : out) x /= total;
      }
      for (std::size_t k = 0; k < num_classes; ++k) {
        change = std::max(change, std::abs(out[k] - current[i][k]));
      }
    }
    std::swap(current, next);
    result.iterations = iter + 1;
    result.last_change = change;
    if (change < options.tolerance) break;
  }

  for (std::size_t i = 0; i < n; ++i) {
    ClassScores masses;
    masses.reserve(num_classes);
    for (std::size_t k = 0; k < num_classes; ++k) {
      masses.push_back({static_cast<ClassId>(k), current[i][k]});
    }
    result.distributions.emplace(vertices[i],
                                 LabelDistribution::FromMasses(std::move(masses)));
  }
  return result;
}

}  // namespace graphreg
