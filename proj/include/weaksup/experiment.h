// Copyright 2026 The Weaksup Authors.
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

// Learning-curve harness: sweeps a ladder of clean training sizes times a
// number of seeds for one or more training methods, reseeds degenerate runs
// and aggregates test F1 as mean and standard error.

#ifndef WEAKSUP_EXPERIMENT_H_
#define WEAKSUP_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weaksup/annotators.h"
#include "weaksup/classifier.h"
#include "weaksup/corpus.h"
#include "weaksup/eval.h"

namespace weaksup {

enum class Method {
  kClean,          // clean subset only
  kDistant,        // clean + weakly labeled rest, no noise handling
  kChannel,        // + estimated confusion matrix
  kSmoothChannel,  // + beta-smoothed confusion matrix
};

std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

struct ExperimentConfig {
  Task task = Task::kNer;
  std::string language;
  std::filesystem::path train, dev, test;
  // Either a rule config to annotate the training set, or a weak-label file
  // aligned with it.
  std::optional<std::filesystem::path> rules;
  std::optional<std::filesystem::path> weak;
  std::filesystem::path embeddings;
  std::filesystem::path out_dir = "curve_out";
  // Sizes; 0 stands for the full training set.
  std::vector<size_t> sizes{10, 20, 50, 100, 200, 400, 0};
  size_t seeds = 10;
  uint64_t master_seed = 0;
  std::vector<Method> methods{Method::kClean};
  TrainSchedule schedule = TrainSchedule::ForTask(Task::kNer);
  double beta = 0.8;
  bool dev_downsize = true;
  std::optional<bool> convergence_filter;  // default: on for topics
  size_t max_reseeds = 3;

  bool FilterEnabled() const { return convergence_filter.value_or(task == Task::kTopic); }
};

// Parses "10,20,full" into sizes (full -> 0).
std::vector<size_t> ParseSizes(std::string_view text);

// [experiment] section; relative paths resolve against the file's
// directory.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path);

struct RunRequest {
  Method method = Method::kClean;
  size_t size = 0;
  size_t seed_index = 0;
  size_t attempt = 0;
  uint64_t train_seed = 0;
  Dataset clean;
  Dataset dev;
  // Weakly labeled training sentences outside the clean subset.
  Dataset noisy;
};

struct RunOutcome {
  Metrics dev_metrics;
  Metrics test_metrics;
  double test_f1 = 0;
};

using RunFunction = std::function<RunOutcome(const RunRequest &)>;

struct CurveRun {
  Method method = Method::kClean;
  size_t size = 0;
  size_t seed_index = 0;
  size_t attempts = 1;
  double test_f1 = 0;
  Metrics test_metrics;
};

struct CurvePoint {
  Method method = Method::kClean;
  size_t size = 0;
  AggregateMetrics aggregate;
};

struct CurveResult {
  std::vector<CurveRun> runs;
  std::vector<CurvePoint> points;
  size_t reseeds = 0;
};

// Every reseed of a run was flagged by the convergence filter.
class FlaggedRunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveData {
  Task task = Task::kNer;
  Dataset train;  // gold plus weak layers
  Dataset dev;
  Dataset test;
};

// Sweeps methods x sizes x seeds. The clean subset and downsized dev set of
// a seed depend only on (master seed, seed index, attempt), so subsets are
// nested across sizes and shared across methods.
CurveResult RunCurve(const ExperimentConfig &config, const CurveData &data,
                     const RunFunction &run);

// Trains the reference model for a request and scores it on `test`.
RunFunction MakeTrainingRunner(const ExperimentConfig &config, const CurveData &data,
                               const EmbeddingTable &embeddings);

// Loads datasets, applies rules (or attaches weak labels) to the training set.
CurveData LoadCurveData(const ExperimentConfig &config, std::vector<std::string> *warnings);

// Runs section "setting,size,seed,f1", a blank line, then the aggregate
// section "setting,size,mean_f1,stderr".
std::string CurveCsv(const CurveResult &result);
// Per-run test metrics, "setting,seed,label,precision,recall,f1,support".
std::string CurveMetricsCsv(const CurveResult &result);

// Estimated (and optionally smoothed) channel from the gold and weak layers
// of a dataset. Topic sentences without a weak class are skipped.
ConfusionMatrix EstimateFromDataset(const Dataset &dataset, const std::vector<std::string> &labels,
                                    std::optional<double> beta, const EstimateOptions &options = {});

// Attaches the tag (or class) column of `weak` as the weak layer of `gold`.
Dataset AttachWeakLayer(const Dataset &gold, const Dataset &weak);

}  // namespace weaksup

#endif  // WEAKSUP_EXPERIMENT_H_
