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

// Finite-difference verification of the analytic objective gradient on
// random small networks.

#ifndef GRAPHREG_GRADCHECK_H_
#define GRAPHREG_GRADCHECK_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "graphreg/model.h"
#include "graphreg/trainer.h"

namespace graphreg {

struct GradCheckConfig {
  std::size_t nets = 24;
  std::uint64_t seed = 7;
  std::size_t batch_size = 6;
  // Central-difference step.
  double step = 1e-5;
  double tolerance = 1e-5;
  // Graph term weight; 0 checks the supervised path only.
  double alpha = 1.0;
  std::vector<Metric> metrics = {Metric::kCosine, Metric::kEuclidean};
  // Negates the analytic gradient. Negative control for the harness.
  bool inject_sign_flip = false;
};

// Relative error |a - n| / max(|a|, |n|, kGradCheckFloor). The floor keeps
// near-zero entries from turning rounding noise into large ratios.
inline constexpr double kGradCheckFloor = 1e-3;
double GradCheckError(double analytic, double numeric);

struct GradCheckCase {
  std::string description;
  double max_rel_error = 0.0;
  std::size_t parameters = 0;
  std::size_t pairs = 0;
};

struct GradCheckReport {
  std::vector<GradCheckCase> cases;
  double max_rel_error = 0.0;
  bool passed = false;
};

// Worst relative error over every parameter of params, comparing
// ComputeBatchGradient against central differences of EvaluateObjective.
double CheckBatchGradient(const ModelParams& params, const Batch& batch,
                          const ObjectiveConfig& objective, double step,
                          bool negate_analytic = false);

// Nets cycle through the configured metrics; shapes are drawn with
// input_dim <= 8, up to two hidden layers of width <= 8 and K <= 16. Inputs
// are redrawn until no hidden pre-activation sits within 1e-3 of a ReLU-6
// kink, so the differences never straddle one.
GradCheckReport RunGradCheck(const GradCheckConfig& config);

}  // namespace graphreg

#endif  // GRAPHREG_GRADCHECK_H_
