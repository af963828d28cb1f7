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

// Reference implementations used as test oracles. Written directly from the
// definitions, without sharing code with the library.

#ifndef GRAPHREG_TESTS_ORACLES_H_
#define GRAPHREG_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace graphreg::testing {

struct OraclePoint {
  std::uint64_t id;
  std::vector<double> x;
  std::set<std::uint32_t> labels;
};

inline double OracleEuclidean(const std::vector<double>& a,
                              const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double OracleCosine(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

// Exhaustive Top-k: rank the whole index by (distance, id) and look for any
// shared label among the first k.
inline std::map<std::size_t, double> OracleTopK(
    const std::vector<OraclePoint>& queries,
    const std::vector<OraclePoint>& index, const std::vector<std::size_t>& ks,
    bool cosine) {
  std::map<std::size_t, std::size_t> hits;
  for (std::size_t k : ks) hits[k] = 0;
  for (const OraclePoint& q : queries) {
    std::vector<std::tuple<double, std::uint64_t, const OraclePoint*>> all;
    for (const OraclePoint& p : index) {
      const double d = cosine ? OracleCosine(q.x, p.x) : OracleEuclidean(q.x, p.x);
      all.emplace_back(d, p.id, &p);
    }
    std::sort(all.begin(), all.end());
    for (std::size_t k : ks) {
      const std::size_t limit = std::min(k, all.size());
      bool hit = false;
      for (std::size_t r = 0; r < limit && !hit; ++r) {
        for (std::uint32_t label : std::get<2>(all[r])->labels) {
          if (q.labels.count(label)) hit = true;
        }
      }
      if (hit) ++hits[k];
    }
  }
  std::map<std::size_t, double> out;
  for (const auto& [k, h] : hits) {
    out[k] = queries.empty() ? 0.0
                             : static_cast<double>(h) /
                                   static_cast<double>(queries.size());
  }
  return out;
}

// Dense Jacobi label propagation over an explicit weight matrix.
// w[i][j] symmetric, seeds[i] empty for unlabeled vertices. Seeded vertices
// stay fixed when clamp is set.
inline std::vector<std::vector<double>> OracleLabelPropagation(
    const std::vector<std::vector<double>>& w,
    const std::vector<std::vector<double>>& seeds, std::size_t classes,
    std::size_t iterations, bool clamp = true) {
  const std::size_t n = w.size();
  std::vector<std::vector<double>> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = seeds[i].empty() ? std::vector<double>(classes, 1.0 / classes) : seeds[i];
  }
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<std::vector<double>> next = f;
    for (std::size_t i = 0; i < n; ++i) {
      if (clamp && !seeds[i].empty()) continue;
      double total = 0.0;
      std::vector<double> acc(classes, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (w[i][j] == 0.0) continue;
        total += w[i][j];
        for (std::size_t c = 0; c < classes; ++c) acc[c] += w[i][j] * f[j][c];
      }
      if (total == 0.0) continue;
      for (std::size_t c = 0; c < classes; ++c) next[i][c] = acc[c] / total;
    }
    f = std::move(next);
  }
  return f;
}

}  // namespace graphreg::testing

#endif  // GRAPHREG_TESTS_ORACLES_H_
