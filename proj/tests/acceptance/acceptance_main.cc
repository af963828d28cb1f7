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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. "--only NAME" runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "commands.h"
#include "graphreg/dataio.h"
#include "graphreg/eval.h"
#include "graphreg/graph.h"
#include "graphreg/losses.h"
#include "graphreg/model.h"
#include "graphreg/text_util.h"
#include "graphreg/trainer.h"
#include "oracles.h"

namespace graphreg::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("graphreg_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int RunQuiet(const std::vector<std::string>& args, std::string* out_text) {
  std::ostringstream out, err;
  const int code = cli::RunCli(args, out, err);
  if (out_text != nullptr) *out_text = out.str();
  if (code != 0) std::cerr << err.str();
  return code;
}

// --- gradient check --------------------------------------------------------

std::optional<double> MaxErrorFromReport(const std::string& text) {
  const std::string key = "max relative error: ";
  const auto pos = text.find(key);
  if (pos == std::string::npos) return std::nullopt;
  const auto end = text.find(' ', pos + key.size());
  return ParseDouble(std::string_view(text).substr(pos + key.size(),
                                                   end - pos - key.size()));
}

Outcome GradientCheck() {
  const auto start = Clock::now();
  Outcome o{true, ""};
  struct Run {
    const char* alpha;
    const char* seed;
  };
  std::size_t nets = 0;
  for (const Run& run : {Run{"1", "7"}, Run{"0", "8"}}) {
    std::string text;
    const int code = RunQuiet({"gradcheck", "--nets", "24", "--alpha", run.alpha,
                               "--seed", run.seed, "--metric", "both",
                               "--tolerance", "1e-5"},
                              &text);
    const auto err = MaxErrorFromReport(text);
    nets += 24;
    o.detail += std::string("alpha=") + run.alpha + " max_rel_error=" +
                (err ? Fmt(*err, 3) : "?") + " exit=" + std::to_string(code) + "; ";
    if (code != 0 || !err || *err > 1e-5) o.pass = false;
  }
  const double secs = Seconds(start);
  o.detail += std::to_string(nets) + " nets, both metrics, " + Fmt(secs, 3) + "s";
  if (secs >= 60.0) o.pass = false;
  return o;
}

// --- sampled softmax -------------------------------------------------------

Outcome SampledSoftmaxExactness() {
  Prng rng(2718);
  double worst_vs_softmax = 0.0;
  double worst_vs_reference = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = 2 + rng.UniformInt(99);
    ClassScores z;
    std::vector<ClassId> all;
    for (std::size_t i = 0; i < k; ++i) {
      z.push_back({static_cast<ClassId>(i), 8.0 * rng.Normal()});
      all.push_back(static_cast<ClassId>(i));
    }
    const LabelDistribution sampled = SampledSoftmax(z, all);
    const LabelDistribution full = Softmax(z);
    long double m = z[0].value;
    for (const ClassValue& cv : z) m = std::max<long double>(m, cv.value);
    long double total = 0;
    for (const ClassValue& cv : z) total += std::exp(cv.value - m);
    for (const ClassValue& cv : z) {
      const double ref = static_cast<double>(std::exp(cv.value - m) / total);
      worst_vs_softmax =
          std::max(worst_vs_softmax, std::abs(sampled.Mass(cv.id) - full.Mass(cv.id)));
      worst_vs_reference =
          std::max(worst_vs_reference, std::abs(sampled.Mass(cv.id) - ref));
    }
  }
  return {worst_vs_softmax <= 1e-12 && worst_vs_reference <= 1e-12,
          "1000 logit vectors, max |sampled - softmax| = " + Fmt(worst_vs_softmax, 3) +
              ", max |sampled - extended-precision reference| = " +
              Fmt(worst_vs_reference, 3)};
}

// --- alpha = 0 equivalence -------------------------------------------------

Dataset MediumDataset(std::uint64_t seed) {
  SyntheticConfig c;
  c.num_classes = 10;
  c.per_class = 60;
  c.dim = 16;
  c.noise_sigma = 0.2;
  c.unlabeled_fraction = 0.2;
  c.multilabel_rate = 0.05;
  Prng rng(seed);
  return GenerateSynthetic(c, rng);
}

SimilarityGraph GraphFor(const Dataset& d, std::uint64_t seed) {
  Prng rng(seed);
  const std::vector<ExampleId> labeled = d.LabeledIds();
  return BuildGraph(GenerateClickLogs(d, ClickLogConfig(), rng),
                    kDefaultGraphThreshold, labeled)
      .graph;
}

ModelConfig MediumModel(const Dataset& d) {
  ModelConfig m;
  m.input_dim = d.dim();
  m.hidden_dims = {32};
  m.embedding_dim = 16;
  m.num_classes = d.num_classes;
  return m;
}

Outcome AlphaZeroEquivalence() {
  const Dataset d = MediumDataset(31);
  const SimilarityGraph g = GraphFor(d, 32);
  TrainConfig tc;
  tc.alpha = 0.0;
  tc.max_steps = 1000;
  tc.seed = 33;
  const TrainResult with_graph = Train(d, &g, MediumModel(d), tc);
  const TrainResult without = Train(d, nullptr, MediumModel(d), tc);
  double worst = 0.0;
  const auto a = with_graph.params.Blocks();
  const auto b = without.params.Blocks();
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < a[k].size(); ++i) {
      worst = std::max(worst, std::abs(a[k][i] - b[k][i]));
    }
  }
  double omega = 0.0;
  for (const TrainRecord& r : with_graph.log) omega += r.loss.graph;
  return {worst <= 1e-12 && !g.empty(),
          "1000 steps, " + std::to_string(g.num_edges()) +
              " edges, max parameter difference " + Fmt(worst, 3) +
              ", graph term still reported (sum " + Fmt(omega, 4) + ")"};
}

// --- graph pull and kNN quality --------------------------------------------

constexpr std::size_t kSeeds = 5;

struct RunMetrics {
  double edge_cosine = 0.0;
  double edge_euclidean_normalized = 0.0;
  double top1 = 0.0;
  double top5 = 0.0;
};

struct SeedResult {
  std::size_t edges = 0;
  std::size_t labeled = 0;
  std::size_t unlabeled = 0;
  RunMetrics alpha0;
  RunMetrics alpha1;
};

struct Experiment {
  std::vector<SeedResult> seeds;
  double seconds = 0.0;
  std::string setup;
};

SyntheticConfig PullDataConfig() {
  SyntheticConfig c;
  c.num_classes = 50;
  c.per_class = 120;
  c.dim = 128;
  c.noise_sigma = 0.15;
  c.unlabeled_fraction = 1.0 / 6.0;
  c.multilabel_rate = 0.05;
  c.query_per_class = 20;
  return c;
}

ModelConfig PullModel() {
  ModelConfig m;
  m.input_dim = 128;
  m.hidden_dims = {128};
  m.embedding_dim = 64;
  m.num_classes = 50;
  return m;
}

RunMetrics Measure(const ModelParams& params, const Dataset& train,
                   const Dataset& query, const SimilarityGraph& graph) {
  RunMetrics m;
  const std::vector<EmbeddedItem> raw = EmbedDataset(params, train, false);
  std::unordered_map<ExampleId, const DenseVector*> by_id;
  for (const EmbeddedItem& item : raw) by_id.emplace(item.id, &item.embedding);
  for (const Edge& e : graph.edges()) {
    const DenseVector& u = *by_id.at(e.u);
    const DenseVector& v = *by_id.at(e.v);
    m.edge_cosine += CosineDistance(u.span(), v.span());
    m.edge_euclidean_normalized += EuclideanDistance(
        NormalizeEmbedding(u).span(), NormalizeEmbedding(v).span());
  }
  m.edge_cosine /= static_cast<double>(graph.num_edges());
  m.edge_euclidean_normalized /= static_cast<double>(graph.num_edges());

  std::vector<EmbeddedItem> index;
  for (EmbeddedItem& item : EmbedDataset(params, train, true)) {
    if (!item.labels.empty()) index.push_back(std::move(item));
  }
  const std::vector<EmbeddedItem> queries = EmbedDataset(params, query, true);
  const std::vector<std::size_t> ks = {1, 5};
  const TopKResult topk = KnnTopK(queries, index, ks, Metric::kEuclidean);
  m.top1 = topk.accuracy.at(1);
  m.top5 = topk.accuracy.at(5);
  return m;
}

const Experiment& PullExperiment() {
  static std::optional<Experiment> cached;
  if (cached) return *cached;
  Experiment ex;
  const auto start = Clock::now();
  const SyntheticConfig data_config = PullDataConfig();
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    Prng data_rng(Prng::DeriveSeed(seed, 1, 0));
    const Dataset all = GenerateSynthetic(data_config, data_rng);
    const Dataset train = all.WithSplit(Split::kTrain);
    const Dataset query = all.WithSplit(Split::kQuery);
    Prng click_rng(Prng::DeriveSeed(seed, 2, 0));
    const std::vector<ExampleId> labeled = train.LabeledIds();
    const SimilarityGraph graph =
        BuildGraph(GenerateClickLogs(train, ClickLogConfig(), click_rng),
                   kDefaultGraphThreshold, labeled)
            .graph;
    SeedResult r;
    r.edges = graph.num_edges();
    r.labeled = labeled.size();
    r.unlabeled = train.size() - labeled.size();
    for (double alpha : {0.0, 1.0}) {
      TrainConfig tc;
      tc.alpha = alpha;
      tc.decay_every = 1000;
      tc.max_steps = 5000;
      tc.seed = seed;
      const TrainResult result = Train(train, &graph, PullModel(), tc);
      (alpha == 0.0 ? r.alpha0 : r.alpha1) = Measure(result.params, train, query, graph);
    }
    ex.seeds.push_back(r);
  }
  ex.seconds = Seconds(start);
  cached = std::move(ex);
  return *cached;
}

Outcome GraphPull() {
  const Experiment& ex = PullExperiment();
  Outcome o{true, ""};
  std::size_t wins = 0;
  for (std::size_t i = 0; i < ex.seeds.size(); ++i) {
    const SeedResult& r = ex.seeds[i];
    const bool win = r.alpha1.edge_cosine < r.alpha0.edge_cosine;
    if (win) ++wins;
    if (r.edges < 5000 || r.labeled != 5000 || r.unlabeled != 1000) o.pass = false;
    o.detail += "\n    seed " + std::to_string(i + 1) + ": edges " +
                std::to_string(r.edges) + ", mean edge cosine distance alpha=0 " +
                Fmt(r.alpha0.edge_cosine) + " alpha=1 " + Fmt(r.alpha1.edge_cosine) +
                " (normalized L2 " + Fmt(r.alpha0.edge_euclidean_normalized) +
                " vs " + Fmt(r.alpha1.edge_euclidean_normalized) + ")";
  }
  if (wins != kSeeds) o.pass = false;
  if (ex.seconds >= 600.0) o.pass = false;
  o.detail = std::to_string(wins) + "/" + std::to_string(kSeeds) +
             " seeds lower with alpha=1; 10 runs x 5000 steps in " +
             Fmt(ex.seconds, 4) + "s" + o.detail;
  return o;
}

Outcome DirectionalQuality() {
  const Experiment& ex = PullExperiment();
  double mean0 = 0.0, mean1 = 0.0;
  std::string per_seed;
  for (std::size_t i = 0; i < ex.seeds.size(); ++i) {
    const SeedResult& r = ex.seeds[i];
    mean0 += r.alpha0.top1;
    mean1 += r.alpha1.top1;
    per_seed += "\n    seed " + std::to_string(i + 1) + ": top-1 alpha=0 " +
                Fmt(r.alpha0.top1) + " alpha=1 " + Fmt(r.alpha1.top1) +
                "; top-5 alpha=0 " + Fmt(r.alpha0.top5) + " alpha=1 " +
                Fmt(r.alpha1.top5);
  }
  mean0 /= static_cast<double>(ex.seeds.size());
  mean1 /= static_cast<double>(ex.seeds.size());
  return {mean1 >= mean0, "mean held-out top-1 alpha=1 " + Fmt(mean1) +
                              " vs alpha=0 " + Fmt(mean0) + per_seed};
}

// --- kNN oracle ------------------------------------------------------------

Outcome KnnOracle() {
  Prng rng(4242);
  const std::vector<std::size_t> ks = {1, 3, 5};
  std::size_t mismatches = 0;
  std::size_t instances = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const Metric metric = instance % 2 == 0 ? Metric::kEuclidean : Metric::kCosine;
    const std::size_t index_size = 5 + rng.UniformInt(46);
    const std::size_t num_queries = 1 + rng.UniformInt(20);
    const std::size_t dim = 1 + rng.UniformInt(8);
    std::vector<EmbeddedItem> queries, index;
    std::vector<testing::OraclePoint> oq, oi;
    for (std::size_t i = 0; i < num_queries + index_size; ++i) {
      EmbeddedItem item;
      item.id = 10 * (num_queries + index_size) - 3 * i;
      item.embedding = DenseVector(dim);
      for (double& x : item.embedding) {
        // Integer grid for Euclidean (exact ties), continuous for cosine.
        x = metric == Metric::kEuclidean
                ? static_cast<double>(rng.UniformInt(5)) - 2.0
                : rng.Normal();
      }
      const std::size_t num_labels = i < num_queries ? 1 + rng.UniformInt(2)
                                                     : rng.UniformInt(3);
      for (std::size_t l = 0; l < num_labels; ++l) {
        item.labels.push_back(static_cast<ClassId>(rng.UniformInt(5)));
      }
      std::sort(item.labels.begin(), item.labels.end());
      item.labels.erase(std::unique(item.labels.begin(), item.labels.end()),
                        item.labels.end());
      testing::OraclePoint p{item.id, item.embedding.values(),
                             {item.labels.begin(), item.labels.end()}};
      if (i < num_queries) {
        queries.push_back(std::move(item));
        oq.push_back(std::move(p));
      } else {
        index.push_back(std::move(item));
        oi.push_back(std::move(p));
      }
    }
    const TopKResult got = KnnTopK(queries, index, ks, metric);
    const auto want = testing::OracleTopK(oq, oi, ks, metric == Metric::kCosine);
    for (std::size_t k : ks) {
      if (got.accuracy.at(k) != want.at(k)) ++mismatches;
    }
    ++instances;
  }
  return {mismatches == 0, std::to_string(instances) +
                               " instances (<=50 index points, <=8 dims, k in "
                               "{1,3,5}), " +
                               std::to_string(mismatches) + " mismatches"};
}

// --- triplets --------------------------------------------------------------

Outcome Triplets() {
  struct Case {
    double ap, an, eta;
    bool expected;
  };
  const std::vector<Case> cases = {{0.3, 0.5, 0.0, true},  {0.3, 0.5, 0.3, false},
                                   {0.5, 0.5, 0.0, false}, {0.5, 0.3, 0.0, false},
                                   {0.5, 0.3, -0.3, true}, {0.0, 2.0, 1.9, true},
                                   {0.0, 2.0, 2.0, false}};
  std::size_t wrong = 0;
  for (const Case& c : cases) {
    if (TripletAccurate(c.ap, c.an, c.eta) != c.expected) ++wrong;
  }

  Prng rng(99);
  std::unordered_map<ExampleId, DenseVector> emb;
  for (ExampleId id = 0; id < 300; ++id) {
    DenseVector v(8);
    for (double& x : v) x = rng.Normal();
    emb.emplace(id, NormalizeEmbedding(v));
  }
  std::vector<Triplet> triplets;
  for (int t = 0; t < 1000; ++t) {
    triplets.push_back({rng.UniformInt(300), rng.UniformInt(300), rng.UniformInt(300)});
  }
  const std::vector<double> grid = DefaultEtaGrid();
  std::size_t increases = 0;
  for (Metric m : {Metric::kEuclidean, Metric::kCosine}) {
    const auto curve = RecallVsMargin(triplets, emb, m, grid);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i].recall > curve[i - 1].recall) ++increases;
    }
  }

  // The headline triplet accuracy reported by eval is the eta=0 point.
  const fs::path dir = ScratchDir("triplets");
  bool headline_ok = false;
  std::string headline;
  if (RunQuiet({"gen-data", "--out", (dir / "d").string(), "--num-classes", "4",
                "--per-class", "20", "--dim", "6", "--triplets", "200"},
               nullptr) == 0 &&
      RunQuiet({"train", "--data", (dir / "d/train.tsv").string(), "--max-steps",
                "20", "--out", (dir / "t").string()},
               nullptr) == 0) {
    std::string text;
    if (RunQuiet({"eval", "--checkpoint", (dir / "t/checkpoint.bin").string(),
                  "--queries", (dir / "d/query.tsv").string(), "--index",
                  (dir / "d/train.tsv").string(), "--triplets",
                  (dir / "d/triplets.tsv").string(), "--out", (dir / "e").string()},
                 &text) == 0) {
      std::ifstream recall(dir / "e/recall.tsv");
      std::string line, at_zero;
      while (std::getline(recall, line)) {
        if (line.rfind("0\t", 0) == 0) at_zero = line.substr(2);
      }
      const auto pos = text.find("triplet accuracy: ");
      if (pos != std::string::npos && !at_zero.empty()) {
        headline = text.substr(pos + 18, text.find('\n', pos) - pos - 18);
        headline_ok = headline == at_zero;
      }
    }
  }
  fs::remove_all(dir);
  return {wrong == 0 && increases == 0 && headline_ok,
          std::to_string(cases.size() - wrong) + "/" + std::to_string(cases.size()) +
              " hand cases; 1000 random triplets, " + std::to_string(increases) +
              " increases over the 41-point grid (both metrics); headline "
              "accuracy " + headline + " equals the eta=0 curve point: " +
              (headline_ok ? "yes" : "no")};
}

// --- label propagation -----------------------------------------------------

Outcome LabelPropagationOracle() {
  // Vertices 0..9; 0-4 labeled (classes 0,0,1,1,0), 5-9 unlabeled.
  const std::vector<int> classes = {0, 0, 1, 1, 0, -1, -1, -1, -1, -1};
  std::vector<ExampleId> labeled_ids;
  std::vector<std::vector<double>> seeds(10);
  std::map<ExampleId, LabelDistribution> labeled;
  for (ExampleId v = 0; v < 10; ++v) {
    if (classes[v] < 0) continue;
    labeled_ids.push_back(v);
    seeds[v] = {classes[v] == 0 ? 1.0 : 0.0, classes[v] == 1 ? 1.0 : 0.0};
    labeled.emplace(v, LabelDistribution::FromMasses(
                           {{0, seeds[v][0]}, {1, seeds[v][1]}}));
  }
  Prng rng(10);
  std::vector<Edge> edges;
  std::vector<std::vector<double>> w(10, std::vector<double>(10, 0.0));
  for (ExampleId u = 0; u < 5; ++u) {
    for (ExampleId v = u + 1; v < 10; ++v) {
      if (rng.Uniform() < 0.55) {
        const double weight = 0.1 + 0.9 * rng.Uniform();
        edges.push_back({u, v, weight});
        w[u][v] = w[v][u] = weight;
      }
    }
  }
  const SimilarityGraph graph = SimilarityGraph::FromEdges(edges, labeled_ids);
  double worst = 0.0;
  for (bool clamp : {true, false}) {
    LabelPropagationOptions options;
    options.clamp = clamp;
    options.max_iterations = clamp ? 1000 : 25;
    options.tolerance = clamp ? 1e-14 : 0.0;
    const auto got = PropagateLabels(graph, labeled, 2, options);
    const auto want = testing::OracleLabelPropagation(
        w, seeds, 2, clamp ? 1000 : options.max_iterations, clamp);
    for (ExampleId v = 0; v < 10; ++v) {
      if (!got.distributions.contains(v)) return {false, "vertex missing"};
      for (ClassId c = 0; c < 2; ++c) {
        worst = std::max(worst,
                         std::abs(got.distributions.at(v).Mass(c) - want[v][c]));
      }
    }
  }
  return {worst <= 1e-6, "10 vertices, " + std::to_string(edges.size()) +
                             " edges, clamped and unclamped; max deviation " +
                             Fmt(worst, 3)};
}

// --- distribution sanity ---------------------------------------------------

Outcome DistributionSanity() {
  const Dataset d = MediumDataset(41);
  const SimilarityGraph g = GraphFor(d, 42);
  TrainConfig tc;
  tc.max_steps = 1000;
  tc.sampled_vocab = 6;
  tc.seed = 43;
  std::map<DistributionKind, std::size_t> counts;
  double worst = 0.0;
  TrainOptions options;
  options.observer = [&](DistributionKind kind, const LabelDistribution& dist) {
    ++counts[kind];
    double total = 0.0;
    for (const ClassValue& cv : dist.masses()) {
      if (cv.value < 0.0) worst = INFINITY;
      total += cv.value;
    }
    worst = std::max(worst, std::abs(total - 1.0));
  };
  Train(d, &g, MediumModel(d), tc, options);
  const std::size_t expected = tc.max_steps * tc.batch_size;
  const bool all_seen = counts[DistributionKind::kPredicted] == expected &&
                        counts[DistributionKind::kGroundTruth] == expected &&
                        counts[DistributionKind::kSmoothed] == expected;
  return {all_seen && worst <= 1e-12,
          std::to_string(3 * expected) +
              " distributions over 1000 steps (predicted, ground truth, "
              "smoothed); max |sum - 1| = " +
              Fmt(worst, 3)};
}

// --- determinism -----------------------------------------------------------

bool RunPipeline(const fs::path& dir) {
  const std::string d = (dir / "data").string();
  return RunQuiet({"gen-data", "--out", d, "--seed", "5", "--num-classes", "8",
                   "--per-class", "40", "--dim", "12"},
                  nullptr) == 0 &&
         RunQuiet({"build-graph", "--clicks", d + "/clicks.tsv", "--data",
                   d + "/train.tsv", "--out", (dir / "graph.tsv").string()},
                  nullptr) == 0 &&
         RunQuiet({"train", "--data", d + "/train.tsv", "--graph",
                   (dir / "graph.tsv").string(), "--seed", "5", "--max-steps",
                   "300", "--out", (dir / "train").string()},
                  nullptr) == 0 &&
         RunQuiet({"eval", "--checkpoint", (dir / "train/checkpoint.bin").string(),
                   "--queries", d + "/query.tsv", "--index", d + "/train.tsv",
                   "--triplets", d + "/triplets.tsv", "--out",
                   (dir / "eval").string()},
                  nullptr) == 0;
}

std::map<std::string, std::string> ReadTree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = s.str();
  }
  return files;
}

Outcome Determinism() {
  const fs::path a = ScratchDir("determinism_a");
  const fs::path b = ScratchDir("determinism_b");
  if (!RunPipeline(a) || !RunPipeline(b)) return {false, "pipeline failed"};
  const auto fa = ReadTree(a);
  const auto fb = ReadTree(b);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : fa) {
    auto it = fb.find(name);
    if (it == fb.end() || it->second != bytes) ++differing;
  }
  const bool same_set = fa.size() == fb.size();
  fs::remove_all(a);
  fs::remove_all(b);
  return {same_set && differing == 0 && fa.size() >= 11,
          std::to_string(fa.size()) + " output files compared, " +
              std::to_string(differing) + " differ"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace graphreg::acceptance

int main(int argc, char** argv) {
  using namespace graphreg::acceptance;
  std::string only;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--only") only = argv[i + 1];
  }
  const std::vector<Criterion> criteria = {
      {"gradient-check", GradientCheck},
      {"sampled-softmax-exactness", SampledSoftmaxExactness},
      {"alpha-zero-equivalence", AlphaZeroEquivalence},
      {"graph-pull", GraphPull},
      {"directional-quality", DirectionalQuality},
      {"knn-oracle", KnnOracle},
      {"triplets", Triplets},
      {"label-propagation-oracle", LabelPropagationOracle},
      {"distribution-sanity", DistributionSanity},
      {"determinism", Determinism},
  };
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail
              << std::endl;
  }
  std::cout << ran - failures << "/" << ran << " acceptance criteria passed"
            << std::endl;
  return failures == 0 && ran > 0 ? 0 : 1;
}
