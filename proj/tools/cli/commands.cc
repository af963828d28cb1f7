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

#include "commands.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "graphreg/dataio.h"
#include "graphreg/eval.h"
#include "graphreg/gradcheck.h"
#include "graphreg/graph.h"
#include "graphreg/model.h"
#include "graphreg/text_util.h"
#include "run_config.h"

namespace graphreg::cli {

namespace fs = std::filesystem;

namespace {

constexpr char kManifestFile[] = "manifest.txt";
constexpr char kCheckpointFile[] = "checkpoint.bin";
constexpr char kOptimizerFile[] = "optimizer.bin";
constexpr char kTrainLogFile[] = "train_log.tsv";

// --- key registries --------------------------------------------------------

const std::vector<ConfigKey>& GenDataKeys() {
  static const std::vector<ConfigKey> keys = {
      {"seed", "1", "random seed"},
      {"num_classes", "10", "number of classes"},
      {"per_class", "100", "training examples per class"},
      {"dim", "16", "feature dimension"},
      {"noise_sigma", "0.1", "feature noise around class centroids"},
      {"unlabeled_fraction", "0.2", "fraction of training examples without labels"},
      {"multilabel_rate", "0.05", "probability of a second label"},
      {"query_per_class", "10", "held-out query examples per class"},
      {"intra_rate", "0.02", "click probability for a same-class pair"},
      {"noise_rate", "0.1", "probability of a cross-class record per intra record"},
      {"similar_image_fraction", "0.5", "share of records of the similar-image kind"},
      {"triplets", "1000", "triplets drawn from the query split"},
  };
  return keys;
}

const std::vector<ConfigKey>& BuildGraphKeys() {
  static const std::vector<ConfigKey> keys = {
      {"threshold", "0.1", "minimum click rate (exclusive)"},
  };
  return keys;
}

const std::vector<ConfigKey>& TrainKeys() {
  static const std::vector<ConfigKey> keys = {
      {"alpha", "1", "graph regularizer weight"},
      {"epsilon", "0.1", "label smoothing"},
      {"batch_size", "24", "examples per step"},
      {"sampled_vocab", "0", "label subset size, 0 for the full vocabulary"},
      {"lr0", "0.001", "initial learning rate"},
      {"decay_rate", "0.9", "staircase decay factor"},
      {"decay_every", "100000", "steps per decay"},
      {"momentum", "0.9", "momentum coefficient"},
      {"weight_decay", "0.00004", "L2 weight decay"},
      {"metric", "cosine", "graph distance: cosine or euclidean"},
      {"max_steps", "1000", "total optimizer steps"},
      {"seed", "1", "random seed"},
      {"checkpoint_every", "0", "steps between periodic checkpoints, 0 disables"},
      {"phase_schedule", "", "alpha schedule such as 1000:0,+500:1"},
      {"neighbor_mode", "sampled", "sampled (one neighbor) or all"},
      {"hidden_dims", "64", "comma-separated hidden widths, - for none"},
      {"embedding_dim", "64", "embedding width"},
      {"log_wall_time", "false", "record per-step seconds in the train log"},
  };
  return keys;
}

const std::vector<ConfigKey>& EvalKeys() {
  static const std::vector<ConfigKey> keys = {
      {"k", "1,5", "comma-separated neighbor counts"},
      {"eta_grid", "default", "comma-separated margins, or default"},
      {"metric", "euclidean", "cosine or euclidean"},
      {"normalize", "true", "L2-normalize embeddings"},
  };
  return keys;
}

const std::vector<ConfigKey>& GradCheckKeys() {
  static const std::vector<ConfigKey> keys = {
      {"nets", "24", "random networks to check"},
      {"seed", "7", "random seed"},
      {"batch_size", "6", "examples per network"},
      {"alpha", "1", "graph regularizer weight"},
      {"metric", "both", "cosine, euclidean or both"},
      {"tolerance", "1e-5", "maximum relative error"},
      {"step", "1e-5", "central difference step"},
      {"inject_sign_flip", "false", "negate the analytic gradient"},
  };
  return keys;
}

const std::vector<ConfigKey>& LabelPropKeys() {
  static const std::vector<ConfigKey> keys = {
      {"iterations", "1000", "maximum sweeps"},
      {"clamp", "true", "hold labeled vertices fixed"},
      {"tolerance", "1e-12", "stop when no entry moves more than this"},
  };
  return keys;
}

// --- helpers ---------------------------------------------------------------

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void CheckWritten(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void WriteManifest(const fs::path& path, const RunConfig& config,
                   const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ofstream out = OpenOut(path);
  out << "# graphreg manifest\n";
  out << "manifest_version=1\n";
  out << "config_hash=" << config.Hash() << '\n';
  for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
  std::istringstream lines(config.Canonical());
  std::string line;
  while (std::getline(lines, line)) out << "config." << line << '\n';
  CheckWritten(out, path);
}

std::map<std::string, std::string> ReadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (IsCommentOrBlank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("malformed manifest line in " + path.string());
    }
    entries[line.substr(0, eq)] = std::string(TrimLineEnd(line.substr(eq + 1)));
  }
  return entries;
}

const std::string& ManifestField(const std::map<std::string, std::string>& m,
                                 const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw SchemaError("manifest lacks " + key);
  return it->second;
}

std::vector<Metric> ParseMetricSet(const std::string& text) {
  if (text == "both") return {Metric::kCosine, Metric::kEuclidean};
  return {ParseMetric(text)};
}

NeighborMode ParseNeighborMode(const std::string& text) {
  if (text == "sampled") return NeighborMode::kSampledOne;
  if (text == "all") return NeighborMode::kAllEdges;
  throw InvalidArgumentError("neighbor_mode must be sampled or all, got '" +
                             text + "'");
}

// Flags registered on a subcommand, captured as raw strings.
struct FlagBinding {
  std::vector<ConfigKey> keys;
  std::map<std::string, std::string> values;
  std::string config_path;
};

void BindKeys(CLI::App* sub, FlagBinding& binding) {
  for (const ConfigKey& key : binding.keys) {
    sub->add_option(FlagName(key.name), binding.values[key.name],
                    key.help + " (default " +
                        (key.default_value.empty() ? "none" : key.default_value) +
                        ")");
  }
  sub->add_option("--config", binding.config_path, "key=value config file");
}

RunConfig Resolve(CLI::App* sub, const FlagBinding& binding) {
  RunConfig config(binding.keys);
  if (!binding.config_path.empty()) config.LoadFile(binding.config_path);
  for (const ConfigKey& key : binding.keys) {
    if (sub->count(FlagName(key.name)) > 0) {
      config.Set(key.name, binding.values.at(key.name));
    }
  }
  return config;
}

// --- commands --------------------------------------------------------------

int GenData(const RunConfig& config, const fs::path& out_dir,
            std::ostream& out) {
  SyntheticConfig data_config;
  data_config.num_classes = config.GetSize("num_classes");
  data_config.per_class = config.GetSize("per_class");
  data_config.dim = config.GetSize("dim");
  data_config.noise_sigma = config.GetDouble("noise_sigma");
  data_config.unlabeled_fraction = config.GetDouble("unlabeled_fraction");
  data_config.multilabel_rate = config.GetDouble("multilabel_rate");
  data_config.query_per_class = config.GetSize("query_per_class");
  data_config.Validate();
  ClickLogConfig click_config;
  click_config.intra_rate = config.GetDouble("intra_rate");
  click_config.noise_rate = config.GetDouble("noise_rate");
  click_config.similar_image_fraction =
      config.GetDouble("similar_image_fraction");
  click_config.Validate();
  const std::size_t num_triplets = config.GetSize("triplets");
  const std::uint64_t seed = config.GetUint64("seed");

  Prng data_rng(Prng::DeriveSeed(seed, 1, 0));
  const Dataset all = GenerateSynthetic(data_config, data_rng);
  const Dataset train = all.WithSplit(Split::kTrain);
  const Dataset query = all.WithSplit(Split::kQuery);
  Prng click_rng(Prng::DeriveSeed(seed, 2, 0));
  const std::vector<ClickLogRecord> clicks =
      GenerateClickLogs(train, click_config, click_rng);
  std::vector<Triplet> triplets;
  if (num_triplets > 0) {
    Prng triplet_rng(Prng::DeriveSeed(seed, 3, 0));
    triplets = MakeSyntheticTriplets(query, triplet_rng, num_triplets);
  }

  EnsureDir(out_dir);
  SaveDataset(train, (out_dir / "train.tsv").string());
  SaveDataset(query, (out_dir / "query.tsv").string());
  SaveClickLog(clicks, (out_dir / "clicks.tsv").string());
  SaveTriplets(triplets, (out_dir / "triplets.tsv").string());
  WriteManifest(out_dir / kManifestFile, config, {});

  out << "train examples: " << train.size() << '\n'
      << "query examples: " << query.size() << '\n'
      << "click records: " << clicks.size() << '\n'
      << "triplets: " << triplets.size() << '\n';
  return kExitOk;
}

int BuildGraphCommand(const RunConfig& config, const std::string& clicks_path,
                      const std::string& data_path, const fs::path& out_path,
                      std::ostream& out, std::ostream& err) {
  const double threshold = config.GetDouble("threshold");
  const Dataset data = LoadDataset(data_path);
  ClickLogReadResult log = LoadClickLog(clicks_path);
  for (const std::string& w : log.warnings) err << "warning: " << w << '\n';
  const std::vector<ExampleId> labeled = data.LabeledIds();
  BuildResult built = BuildGraph(std::move(log.records), threshold, labeled);
  for (const std::string& w : built.report.warnings) {
    err << "warning: " << w << '\n';
  }
  if (out_path.has_parent_path()) EnsureDir(out_path.parent_path());
  SaveEdges(built.graph, out_path.string());

  out << "records: " << built.report.records << '\n'
      << "malformed lines: " << log.malformed_lines << '\n'
      << "malformed records: " << built.report.malformed << '\n'
      << "at or below threshold: " << built.report.at_or_below_threshold << '\n'
      << "unlabeled source: " << built.report.unlabeled_source << '\n'
      << "merged duplicates: " << built.report.merged_duplicates << '\n'
      << FormatGraphStats(ComputeGraphStats(built.graph));
  return kExitOk;
}

TrainConfig MakeTrainConfig(const RunConfig& config) {
  TrainConfig tc;
  tc.alpha = config.GetDouble("alpha");
  tc.epsilon = config.GetDouble("epsilon");
  tc.batch_size = config.GetSize("batch_size");
  tc.sampled_vocab = config.GetSize("sampled_vocab");
  tc.lr0 = config.GetDouble("lr0");
  tc.decay_rate = config.GetDouble("decay_rate");
  tc.decay_every = config.GetSize("decay_every");
  tc.momentum = config.GetDouble("momentum");
  tc.weight_decay = config.GetDouble("weight_decay");
  tc.metric = ParseMetric(config.Get("metric"));
  tc.max_steps = config.GetSize("max_steps");
  tc.seed = config.GetUint64("seed");
  tc.checkpoint_every = config.GetSize("checkpoint_every");
  tc.phases = ParsePhaseSchedule(config.Get("phase_schedule"));
  tc.neighbor_mode = ParseNeighborMode(config.Get("neighbor_mode"));
  tc.Validate();
  return tc;
}

void SaveTrainState(const fs::path& dir, const std::string& suffix,
                    const RunConfig& config, bool graph_enabled,
                    const ModelParams& params, const OptimizerState& state) {
  const std::string checkpoint = "checkpoint" + suffix + ".bin";
  const std::string optimizer = "optimizer" + suffix + ".bin";
  SaveCheckpoint(params, (dir / checkpoint).string());
  SaveCheckpoint(state.velocity, (dir / optimizer).string());
  WriteManifest(dir / ("manifest" + suffix + ".txt"), config,
                {{"step", std::to_string(state.step)},
                 {"checkpoint", checkpoint},
                 {"optimizer", optimizer},
                 {"graph_enabled", graph_enabled ? "true" : "false"}});
}

int TrainCommand(const RunConfig& config, const std::string& data_path,
                 const std::string& graph_path, const std::string& resume_path,
                 const fs::path& out_dir, std::ostream& out) {
  const TrainConfig tc = MakeTrainConfig(config);
  const bool log_wall_time = config.GetBool("log_wall_time");
  const Dataset data = LoadDataset(data_path);
  if (data.empty()) throw DegenerateInputError("training set is empty");

  ModelConfig mc;
  mc.input_dim = data.dim();
  mc.hidden_dims = ParseHiddenDims(config.Get("hidden_dims"));
  mc.embedding_dim = config.GetSize("embedding_dim");
  mc.num_classes = data.num_classes;
  mc.Validate();

  std::optional<SimilarityGraph> graph;
  if (!graph_path.empty()) {
    const std::vector<ExampleId> labeled = data.LabeledIds();
    graph = LoadEdges(graph_path, labeled);
  }
  const bool graph_enabled = graph.has_value();

  TrainOptions options;
  if (!resume_path.empty()) {
    const fs::path manifest_path(resume_path);
    const auto manifest = ReadManifest(manifest_path);
    if (ManifestField(manifest, "config_hash") != config.Hash()) {
      throw PreconditionError(
          "resume manifest was written with a different configuration");
    }
    if (ManifestField(manifest, "graph_enabled") !=
        (graph_enabled ? "true" : "false")) {
      throw PreconditionError("resume manifest disagrees on graph use");
    }
    const auto step = ParseUint(ManifestField(manifest, "step"));
    if (!step) throw SchemaError("manifest step is not an integer");
    const fs::path base = manifest_path.parent_path();
    ModelParams params = LoadCheckpoint(
        (base / ManifestField(manifest, "checkpoint")).string());
    OptimizerState state;
    state.velocity =
        LoadCheckpoint((base / ManifestField(manifest, "optimizer")).string());
    state.step = static_cast<std::size_t>(*step);
    params.CheckSameShape(ModelParams::Zeros(mc));
    options.initial_params = std::move(params);
    options.initial_state = std::move(state);
  }

  EnsureDir(out_dir);
  options.on_checkpoint = [&](const ModelParams& params,
                              const OptimizerState& state) {
    SaveTrainState(out_dir, "-" + std::to_string(state.step), config,
                   graph_enabled, params, state);
  };
  TrainResult result =
      Train(data, graph ? &*graph : nullptr, mc, tc, options);

  if (!log_wall_time) {
    for (TrainRecord& r : result.log) r.seconds = 0.0;
  }
  SaveTrainState(out_dir, "", config, graph_enabled, result.params,
                 result.state);
  const fs::path log_path = out_dir / kTrainLogFile;
  std::ofstream log = OpenOut(log_path);
  WriteTrainLog(result.log, log);
  CheckWritten(log, log_path);

  out << "steps: " << result.state.step << '\n'
      << "parameters: " << result.params.ParameterCount() << '\n';
  if (!result.log.empty()) {
    const TrainRecord& last = result.log.back();
    out << "final loss: supervised " << FormatDouble(last.loss.supervised)
        << " graph " << FormatDouble(last.loss.graph) << " total "
        << FormatDouble(last.loss.total) << '\n';
  }
  return kExitOk;
}

int EvalCommand(const RunConfig& config, const std::string& checkpoint_path,
                const std::string& queries_path, const std::string& index_path,
                const std::string& triplets_path, const fs::path& out_dir,
                std::ostream& out, std::ostream& err) {
  const std::vector<std::size_t> ks = ParseSizeList(config.Get("k"));
  const std::string& grid_text = config.Get("eta_grid");
  const std::vector<double> eta_grid =
      grid_text == "default" ? DefaultEtaGrid() : ParseDoubleList(grid_text);
  const Metric metric = ParseMetric(config.Get("metric"));
  const bool normalize = config.GetBool("normalize");

  const ModelParams params = LoadCheckpoint(checkpoint_path);
  const Dataset queries = LoadDataset(queries_path, Split::kQuery);
  const Dataset index = LoadDataset(index_path, Split::kIndex);
  for (const Dataset* d : {&queries, &index}) {
    if (!d->empty() && d->dim() != params.config.input_dim) {
      throw SchemaError("feature dim " + std::to_string(d->dim()) +
                        " does not match checkpoint input_dim " +
                        std::to_string(params.config.input_dim));
    }
  }
  const std::vector<EmbeddedItem> query_items =
      EmbedDataset(params, queries, normalize);
  const std::vector<EmbeddedItem> index_items =
      EmbedDataset(params, index, normalize);

  EvalReport report;
  report.metric = metric;
  TopKResult topk = KnnTopK(query_items, index_items, ks, metric);
  for (const std::string& w : topk.warnings) err << "warning: " << w << '\n';
  report.top_k = topk.accuracy;

  std::vector<Triplet> triplets;
  if (!triplets_path.empty()) triplets = LoadTriplets(triplets_path);
  if (!triplets.empty()) {
    std::unordered_map<ExampleId, DenseVector> embeddings;
    for (const auto* items : {&query_items, &index_items}) {
      for (const EmbeddedItem& item : *items) {
        embeddings.emplace(item.id, item.embedding);
      }
    }
    report.recall_curve = RecallVsMargin(triplets, embeddings, metric, eta_grid);
    const double zero = 0.0;
    report.triplet_accuracy =
        RecallVsMargin(triplets, embeddings, metric, std::span(&zero, 1))
            .front()
            .recall;
  }

  EnsureDir(out_dir);
  const fs::path topk_path = out_dir / "topk.tsv";
  std::ofstream topk_out = OpenOut(topk_path);
  WriteTopKTable(report, topk_out);
  CheckWritten(topk_out, topk_path);
  if (report.triplet_accuracy) {
    const fs::path recall_path = out_dir / "recall.tsv";
    std::ofstream recall_out = OpenOut(recall_path);
    WriteRecallCurve(report, recall_out);
    CheckWritten(recall_out, recall_path);
  }

  out << "metric: " << MetricName(metric) << '\n'
      << "queries: " << topk.num_queries << '\n';
  for (const auto& [k, acc] : report.top_k) {
    out << "top-" << k << ": " << FormatDouble(acc) << '\n';
  }
  if (report.triplet_accuracy) {
    out << "triplets: " << triplets.size() << '\n'
        << "triplet accuracy: " << FormatDouble(*report.triplet_accuracy)
        << '\n';
  }
  return kExitOk;
}

int GradCheckCommand(const RunConfig& config, std::ostream& out) {
  GradCheckConfig gc;
  gc.nets = config.GetSize("nets");
  gc.seed = config.GetUint64("seed");
  gc.batch_size = config.GetSize("batch_size");
  gc.alpha = config.GetDouble("alpha");
  gc.metrics = ParseMetricSet(config.Get("metric"));
  gc.tolerance = config.GetDouble("tolerance");
  gc.step = config.GetDouble("step");
  gc.inject_sign_flip = config.GetBool("inject_sign_flip");
  const GradCheckReport report = RunGradCheck(gc);
  for (const GradCheckCase& c : report.cases) {
    out << c.description << "\tparams=" << c.parameters << "\tpairs="
        << c.pairs << "\tmax_rel_error=" << FormatDouble(c.max_rel_error)
        << '\n';
  }
  out << "max relative error: " << FormatDouble(report.max_rel_error)
      << " (tolerance " << FormatDouble(gc.tolerance) << ")\n"
      << (report.passed ? "gradcheck passed" : "gradcheck FAILED") << '\n';
  return report.passed ? kExitOk : kExitGradCheckFailed;
}

int LabelPropCommand(const RunConfig& config, const std::string& graph_path,
                     const std::string& data_path, const fs::path& out_path,
                     std::ostream& out) {
  LabelPropagationOptions options;
  options.max_iterations = config.GetSize("iterations");
  options.clamp = config.GetBool("clamp");
  options.tolerance = config.GetDouble("tolerance");
  const Dataset data = LoadDataset(data_path);
  const std::vector<ExampleId> labeled_ids = data.LabeledIds();
  const SimilarityGraph graph = LoadEdges(graph_path, labeled_ids);

  std::map<ExampleId, LabelDistribution> seeds;
  for (const Example& e : data.examples) {
    if (!e.labeled()) continue;
    ClassScores masses;
    for (ClassId c : e.labels) {
      masses.push_back({c, 1.0 / static_cast<double>(e.labels.size())});
    }
    seeds.emplace(e.id, LabelDistribution::FromMasses(std::move(masses)));
  }
  const LabelPropagationResult result =
      PropagateLabels(graph, seeds, data.num_classes, options);

  if (out_path.has_parent_path()) EnsureDir(out_path.parent_path());
  std::ofstream file = OpenOut(out_path);
  file << "# id\tlabeled";
  for (std::size_t c = 0; c < data.num_classes; ++c) file << "\tp_" << c;
  file << '\n';
  for (const auto& [id, dist] : result.distributions) {
    file << id << '\t' << (seeds.contains(id) ? 1 : 0);
    for (std::size_t c = 0; c < data.num_classes; ++c) {
      file << '\t' << FormatDouble(dist.Mass(static_cast<ClassId>(c)));
    }
    file << '\n';
  }
  CheckWritten(file, out_path);
  out << "vertices: " << result.distributions.size() << '\n'
      << "iterations: " << result.iterations << '\n'
      << "last change: " << FormatDouble(result.last_change) << '\n';
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kDegenerateInput: return kExitDegenerate;
    case ErrorCode::kPrecondition: return kExitPrecondition;
    case ErrorCode::kParse: return kExitParse;
    case ErrorCode::kSchema: return kExitSchema;
    case ErrorCode::kDiverged: return kExitDiverged;
    case ErrorCode::kIo: return kExitIo;
  }
  return kExitUsage;
}

std::vector<std::size_t> ParseSizeList(const std::string& text) {
  std::vector<std::size_t> values;
  for (std::string_view field : SplitFields(text, ',')) {
    auto v = ParseUint(field);
    if (!v) {
      throw InvalidArgumentError("expected a list of nonnegative integers, got '" +
                                 text + "'");
    }
    values.push_back(static_cast<std::size_t>(*v));
  }
  return values;
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> values;
  for (std::string_view field : SplitFields(text, ',')) {
    auto v = ParseDouble(field);
    if (!v) {
      throw InvalidArgumentError("expected a list of numbers, got '" + text +
                                 "'");
    }
    values.push_back(*v);
  }
  return values;
}

std::vector<std::size_t> ParseHiddenDims(const std::string& text) {
  if (text.empty() || text == "-") return {};
  return ParseSizeList(text);
}

std::vector<AlphaPhase> ParsePhaseSchedule(const std::string& text) {
  std::vector<AlphaPhase> phases;
  if (text.empty()) return phases;
  std::size_t previous_end = 0;
  for (std::string_view field : SplitFields(text, ',')) {
    const auto colon = field.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgumentError("phase '" + std::string(field) +
                                 "' must look like END:ALPHA or +LEN:ALPHA");
    }
    std::string_view end_text = field.substr(0, colon);
    const bool relative = !end_text.empty() && end_text.front() == '+';
    if (relative) end_text.remove_prefix(1);
    const auto end = ParseUint(end_text);
    const auto alpha = ParseDouble(field.substr(colon + 1));
    if (!end || !alpha) {
      throw InvalidArgumentError("bad phase '" + std::string(field) + "'");
    }
    AlphaPhase phase;
    phase.end_step = static_cast<std::size_t>(*end) + (relative ? previous_end : 0);
    phase.alpha = *alpha;
    if (phase.end_step <= previous_end && !phases.empty()) {
      throw InvalidArgumentError("phase ends must increase");
    }
    previous_end = phase.end_step;
    phases.push_back(phase);
  }
  return phases;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Graph-regularized embedding training toolkit", "graphreg"};
  app.require_subcommand(1);

  std::string out_path, data_path, graph_path, clicks_path, resume_path;
  std::string checkpoint_path, queries_path, index_path, triplets_path;

  FlagBinding gen_flags{GenDataKeys(), {}, {}};
  CLI::App* gen = app.add_subcommand("gen-data", "write a synthetic corpus");
  BindKeys(gen, gen_flags);
  gen->add_option("--out", out_path, "output directory")->required();

  FlagBinding graph_flags{BuildGraphKeys(), {}, {}};
  CLI::App* build =
      app.add_subcommand("build-graph", "turn click logs into an edge file");
  BindKeys(build, graph_flags);
  build->add_option("--clicks", clicks_path, "click log")->required();
  build->add_option("--data", data_path, "dataset naming the labeled examples")
      ->required();
  build->add_option("--out", out_path, "edge file to write")->required();

  FlagBinding train_flags{TrainKeys(), {}, {}};
  CLI::App* train = app.add_subcommand("train", "train an embedding model");
  BindKeys(train, train_flags);
  train->add_option("--data", data_path, "training dataset")->required();
  train->add_option("--graph", graph_path, "edge file; omit to disable the graph term");
  train->add_option("--resume", resume_path, "manifest to resume from");
  train->add_option("--out", out_path, "output directory")->required();

  FlagBinding eval_flags{EvalKeys(), {}, {}};
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  BindKeys(eval, eval_flags);
  eval->add_option("--checkpoint", checkpoint_path, "model checkpoint")->required();
  eval->add_option("--queries", queries_path, "query dataset")->required();
  eval->add_option("--index", index_path, "index dataset")->required();
  eval->add_option("--triplets", triplets_path, "triplet file");
  eval->add_option("--out", out_path, "output directory")->required();

  FlagBinding grad_flags{GradCheckKeys(), {}, {}};
  CLI::App* grad =
      app.add_subcommand("gradcheck", "compare gradients with finite differences");
  BindKeys(grad, grad_flags);

  FlagBinding prop_flags{LabelPropKeys(), {}, {}};
  CLI::App* prop =
      app.add_subcommand("label-prop", "propagate labels over an edge file");
  BindKeys(prop, prop_flags);
  prop->add_option("--graph", graph_path, "edge file")->required();
  prop->add_option("--data", data_path, "dataset with seed labels")->required();
  prop->add_option("--out", out_path, "output file")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("graphreg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return GenData(Resolve(gen, gen_flags), out_path, out);
    }
    if (build->parsed()) {
      return BuildGraphCommand(Resolve(build, graph_flags), clicks_path,
                               data_path, out_path, out, err);
    }
    if (train->parsed()) {
      return TrainCommand(Resolve(train, train_flags), data_path, graph_path,
                          resume_path, out_path, out);
    }
    if (eval->parsed()) {
      return EvalCommand(Resolve(eval, eval_flags), checkpoint_path,
                         queries_path, index_path, triplets_path, out_path,
                         out, err);
    }
    if (grad->parsed()) return GradCheckCommand(Resolve(grad, grad_flags), out);
    if (prop->parsed()) {
      return LabelPropCommand(Resolve(prop, prop_flags), graph_path, data_path,
                              out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace graphreg::cli
