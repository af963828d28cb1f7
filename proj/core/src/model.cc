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

#include "graphreg/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphreg/error.h"

namespace graphreg {

namespace {

std::size_t LayerInputDim(const ModelConfig& config, std::size_t layer) {
  return layer == 0 ? config.input_dim : config.hidden_dims[layer - 1];
}

std::size_t LayerOutputDim(const ModelConfig& config, std::size_t layer) {
  return layer < config.hidden_dims.size() ? config.hidden_dims[layer]
                                           : config.embedding_dim;
}

LinearLayer ZeroLayer(std::size_t out, std::size_t in) {
  return LinearLayer{DenseMatrix(out, in), DenseVector(out)};
}

}  // namespace

void ModelConfig::Validate() const {
  if (input_dim == 0) throw InvalidArgumentError("input_dim must be positive");
  if (embedding_dim == 0) {
    throw InvalidArgumentError("embedding_dim must be positive");
  }
  if (num_classes < 2) {
    throw InvalidArgumentError("num_classes must be at least 2");
  }
  for (std::size_t d : hidden_dims) {
    if (d == 0) throw InvalidArgumentError("hidden dims must be positive");
  }
}

ModelParams ModelParams::Zeros(const ModelConfig& config) {
  config.Validate();
  ModelParams params;
  params.config = config;
  const std::size_t num_layers = config.hidden_dims.size() + 1;
  for (std::size_t l = 0; l < num_layers; ++l) {
    params.layers.push_back(
        ZeroLayer(LayerOutputDim(config, l), LayerInputDim(config, l)));
  }
  params.head = ZeroLayer(config.num_classes, config.embedding_dim);
  return params;
}

std::vector<std::span<double>> ModelParams::Blocks() {
  std::vector<std::span<double>> blocks;
  for (auto& layer : layers) {
    blocks.push_back(layer.weight.span());
    blocks.push_back(layer.bias.span());
  }
  blocks.push_back(head.weight.span());
  blocks.push_back(head.bias.span());
  return blocks;
}

std::vector<std::span<const double>> ModelParams::Blocks() const {
  std::vector<std::span<const double>> blocks;
  for (const auto& layer : layers) {
    blocks.push_back(layer.weight.span());
    blocks.push_back(layer.bias.span());
  }
  blocks.push_back(head.weight.span());
  blocks.push_back(head.bias.span());
  return blocks;
}

std::size_t ModelParams::ParameterCount() const {
  std::size_t n = 0;
  for (auto block : Blocks()) n += block.size();
  return n;
}

bool ModelParams::AllFinite() const {
  for (auto block : Blocks()) {
    for (double x : block) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

void ModelParams::SetZero() {
  for (auto block : Blocks()) std::fill(block.begin(), block.end(), 0.0);
}

void ModelParams::CheckSameShape(const ModelParams& other) const {
  const auto mine = Blocks();
  const auto theirs = other.Blocks();
  if (mine.size() != theirs.size()) {
    throw InvalidArgumentError("parameter block count mismatch");
  }
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (mine[i].size() != theirs[i].size()) {
      throw InvalidArgumentError("parameter block " + std::to_string(i) +
                                 " size mismatch");
    }
  }
}

ModelParams InitParams(const ModelConfig& config, Prng& rng) {
  ModelParams params = ModelParams::Zeros(config);
  auto init = [&rng](DenseMatrix& w) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(w.cols()));
    for (double& x : w.span()) x = scale * rng.Normal();
  };
  for (auto& layer : params.layers) init(layer.weight);
  init(params.head.weight);
  return params;
}

ForwardTrace Forward(const ModelParams& params, const DenseVector& x) {
  if (x.dim() != params.config.input_dim) {
    throw InvalidArgumentError("forward: input has dim " +
                               std::to_string(x.dim()) + ", model expects " +
                               std::to_string(params.config.input_dim));
  }
  ForwardTrace trace;
  trace.inputs.reserve(params.layers.size());
  trace.inputs.push_back(x);
  const std::size_t num_hidden = params.layers.size() - 1;
  for (std::size_t l = 0; l < num_hidden; ++l) {
    const LinearLayer& layer = params.layers[l];
    DenseVector pre = MatVec(layer.weight, trace.inputs.back());
    Axpy(1.0, layer.bias.span(), pre.span());
    DenseVector act(pre.dim());
    for (std::size_t i = 0; i < pre.dim(); ++i) act[i] = Relu6(pre[i]);
    trace.pre_activations.push_back(std::move(pre));
    trace.inputs.push_back(std::move(act));
  }
  const LinearLayer& projection = params.layers.back();
  trace.embedding = MatVec(projection.weight, trace.inputs.back());
  Axpy(1.0, projection.bias.span(), trace.embedding.span());
  return trace;
}

ClassScores Logits(const ModelParams& params, const DenseVector& embedding,
                   std::span<const ClassId> label_subset) {
  if (label_subset.empty()) {
    throw InvalidArgumentError("logits: empty label subset");
  }
  if (embedding.dim() != params.config.embedding_dim) {
    throw InvalidArgumentError("logits: embedding dim mismatch");
  }
  std::vector<ClassId> ids(label_subset.begin(), label_subset.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidArgumentError("logits: duplicate class id in subset");
  }
  if (ids.back() >= params.config.num_classes) {
    throw InvalidArgumentError("logits: class id " +
                               std::to_string(ids.back()) +
                               " out of range for " +
                               std::to_string(params.config.num_classes) +
                               " classes");
  }
  ClassScores out;
  out.reserve(ids.size());
  for (ClassId id : ids) {
    out.push_back({id, Dot(params.head.weight.row(id), embedding.span()) +
                           params.head.bias[id]});
  }
  return out;
}

void AccumulateBackward(const ModelParams& params, const ForwardTrace& trace,
                        const DenseVector& grad_embedding,
                        const ClassScores& grad_logits, ModelGradient& grad) {
  params.CheckSameShape(grad);
  const std::size_t emb_dim = params.config.embedding_dim;
  if (grad_embedding.dim() != emb_dim || trace.embedding.dim() != emb_dim ||
      trace.inputs.size() != params.layers.size()) {
    throw InvalidArgumentError("backward: trace/gradient shape mismatch");
  }

  DenseVector delta = grad_embedding;
  for (const ClassValue& g : grad_logits) {
    if (g.id >= params.config.num_classes) {
      throw InvalidArgumentError("backward: logit gradient for unknown class");
    }
    if (g.value == 0.0) continue;
    Axpy(g.value, trace.embedding.span(), grad.head.weight.row(g.id));
    grad.head.bias[g.id] += g.value;
    Axpy(g.value, params.head.weight.row(g.id), delta.span());
  }

  // delta holds dLoss/d(output of layer l) at the top of each iteration.
  for (std::size_t l = params.layers.size(); l-- > 0;) {
    const LinearLayer& layer = params.layers[l];
    LinearLayer& layer_grad = grad.layers[l];
    if (l + 1 < params.layers.size()) {
      const DenseVector& pre = trace.pre_activations[l];
      for (std::size_t i = 0; i < delta.dim(); ++i) {
        delta[i] *= Relu6Grad(pre[i]);
      }
    }
    AddOuter(1.0, delta.span(), trace.inputs[l].span(), layer_grad.weight);
    Axpy(1.0, delta.span(), layer_grad.bias.span());
    if (l > 0) delta = MatTVec(layer.weight, delta);
  }
}

ModelGradient Backward(const ModelParams& params, const ForwardTrace& trace,
                       const DenseVector& grad_embedding,
                       const ClassScores& grad_logits) {
  ModelGradient grad = ModelParams::Zeros(params.config);
  AccumulateBackward(params, trace, grad_embedding, grad_logits, grad);
  return grad;
}

DenseVector NormalizeEmbedding(const DenseVector& embedding) {
  const double norm = Norm(embedding.span());
  if (!(norm > 0.0)) {
    throw DegenerateInputError("cannot normalize a zero-norm embedding");
  }
  DenseVector out = embedding;
  for (double& x : out) x /= norm;
  return out;
}

}  // namespace graphreg
