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

#include <benchmark/benchmark.h>

#include <vector>

#include "graphreg/dataio.h"
#include "graphreg/eval.h"
#include "graphreg/graph.h"
#include "graphreg/model.h"

namespace graphreg {
namespace {

ModelConfig BenchModel() {
  ModelConfig m;
  m.input_dim = 128;
  m.hidden_dims = {128};
  m.embedding_dim = 64;
  m.num_classes = 50;
  return m;
}

void BM_Forward(benchmark::State& state) {
  Prng rng(1);
  const ModelParams params = InitParams(BenchModel(), rng);
  DenseVector x(128);
  for (double& v : x) v = rng.Normal();
  for (auto _ : state) {
    const ForwardTrace trace = Forward(params, x);
    benchmark::DoNotOptimize(trace.embedding.span().data());
  }
}
BENCHMARK(BM_Forward);

std::vector<EmbeddedItem> RandomItems(Prng& rng, std::size_t n, std::size_t dim) {
  std::vector<EmbeddedItem> items(n);
  for (std::size_t i = 0; i < n; ++i) {
    items[i].id = i;
    items[i].embedding = DenseVector(dim);
    for (double& v : items[i].embedding) v = rng.Normal();
    items[i].labels = {static_cast<ClassId>(rng.UniformInt(10))};
  }
  return items;
}

void BM_KnnTopK(benchmark::State& state) {
  Prng rng(2);
  const auto index = RandomItems(rng, static_cast<std::size_t>(state.range(0)), 64);
  auto queries = RandomItems(rng, 50, 64);
  for (EmbeddedItem& q : queries) q.id += 1000000;
  const std::vector<std::size_t> ks = {1, 5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(KnnTopK(queries, index, ks, Metric::kEuclidean));
  }
}
BENCHMARK(BM_KnnTopK)->Arg(1000)->Arg(5000);

void BM_BuildGraph(benchmark::State& state) {
  SyntheticConfig c;
  c.num_classes = 50;
  c.per_class = 120;
  c.dim = 8;
  Prng rng(3);
  const Dataset d = GenerateSynthetic(c, rng).WithSplit(Split::kTrain);
  const auto records = GenerateClickLogs(d, ClickLogConfig(), rng);
  const std::vector<ExampleId> labeled = d.LabeledIds();
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildGraph(records, kDefaultGraphThreshold, labeled));
  }
}
BENCHMARK(BM_BuildGraph);

}  // namespace
}  // namespace graphreg

BENCHMARK_MAIN();
