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

// Embedding network: a stack of ReLU-6 hidden layers, a linear projection to
// the embedding, and a linear softmax head over the class vocabulary. Forward
// and backward passes are written out by hand so gradients can be checked
// against finite differences in double precision.

#ifndef GRAPHREG_MODEL_H_
#define GRAPHREG_MODEL_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphreg/numerics.h"
#include "graphreg/types.h"

namespace graphreg {

struct ModelConfig {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden_dims;
  std::size_t embedding_dim = 64;
  std::size_t num_classes = 0;

  // Throws InvalidArgumentError on zero dims or num_classes < 2.
  void Validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct LinearLayer {
  DenseMatrix weight;  // out x in
  DenseVector bias;    // out

  friend bool operator==(const LinearLayer&, const LinearLayer&) = default;
};

// Also used as the gradient container: a gradient has exactly the shape of
// the parameters it differentiates.
struct ModelParams {
  ModelConfig config;
  // Hidden layers first, then the embedding projection (always last).
  std::vector<LinearLayer> layers;
  // Softmax head: weight is num_classes x embedding_dim.
  LinearLayer head;

  static ModelParams Zeros(const ModelConfig& config);

  // Every parameter array in a fixed order: for each layer weight then bias,
  // then head weight and head bias. Checkpoints and the optimizer both walk
  // this order.
  std::vector<std::span<double>> Blocks();
  std::vector<std::span<const double>> Blocks() const;

  std::size_t ParameterCount() const;
  bool AllFinite() const;
  void SetZero();
  // Throws InvalidArgumentError unless other has the same shapes.
  void CheckSameShape(const ModelParams& other) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

using ModelGradient = ModelParams;

struct ForwardTrace {
  // inputs[l] is the input of layer l; inputs[0] is the feature vector.
  std::vector<DenseVector> inputs;
  // Pre-activation of every hidden layer (the embedding layer has none).
  std::vector<DenseVector> pre_activations;
  DenseVector embedding;
};

inline double Relu6(double x) { return x < 0.0 ? 0.0 : (x > 6.0 ? 6.0 : x); }
// Subgradient is 0 at both kinks.
inline double Relu6Grad(double x) { return (x > 0.0 && x < 6.0) ? 1.0 : 0.0; }

// Weights ~ N(0, 1/fan_in), biases zero.
ModelParams InitParams(const ModelConfig& config, Prng& rng);

// Unnormalized embedding; no L2 normalization is applied during training.
ForwardTrace Forward(const ModelParams& params, const DenseVector& x);

// z_k = W_k . emb + b_k for each k in label_subset, returned sorted by id.
// Throws InvalidArgumentError on an empty subset, duplicate or out-of-range
// ids, or an embedding of the wrong dimension.
ClassScores Logits(const ModelParams& params, const DenseVector& embedding,
                   std::span<const ClassId> label_subset);

// Adds the parameter gradient of a scalar whose gradients with respect to the
// embedding and to the logits (possibly sparse) are supplied.
void AccumulateBackward(const ModelParams& params, const ForwardTrace& trace,
                        const DenseVector& grad_embedding,
                        const ClassScores& grad_logits, ModelGradient& grad);

ModelGradient Backward(const ModelParams& params, const ForwardTrace& trace,
                       const DenseVector& grad_embedding,
                       const ClassScores& grad_logits);

// Unit-L2 copy of emb. Inference only. Throws DegenerateInputError on a zero
// vector.
DenseVector NormalizeEmbedding(const DenseVector& embedding);

// Checkpoint layout (version 1):
//
//   graphreg-checkpoint 1\n
//   input_dim <n>\n
//   hidden_dims <d1,d2,...|->\n
//   embedding_dim <n>\n
//   num_classes <n>\n
//   parameter_count <n>\n
//   end_header\n
//   <parameter_count IEEE-754 binary64 values, little-endian, in Blocks()
//    order>
//
// Round trips are bit-exact.
void WriteCheckpoint(const ModelParams& params, std::ostream& out);
ModelParams ReadCheckpoint(std::istream& in);
void SaveCheckpoint(const ModelParams& params, const std::string& path);
ModelParams LoadCheckpoint(const std::string& path);

}  // namespace graphreg

#endif  // GRAPHREG_MODEL_H_
