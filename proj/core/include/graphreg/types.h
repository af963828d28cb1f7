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

#ifndef GRAPHREG_TYPES_H_
#define GRAPHREG_TYPES_H_

#include <cstdint>
#include <vector>

namespace graphreg {

using ClassId = std::uint32_t;
using ExampleId = std::uint64_t;

struct ClassValue {
  ClassId id;
  double value;

  friend bool operator==(const ClassValue&, const ClassValue&) = default;
};

// Sparse per-class values (logits, probabilities, gradients), sorted by
// ascending id with no duplicates.
using ClassScores = std::vector<ClassValue>;

enum class Metric { kCosine, kEuclidean };

}  // namespace graphreg

#endif  // GRAPHREG_TYPES_H_
