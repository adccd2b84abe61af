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

#include "weaksup/experiment.h"

#include <algorithm>
#include <set>

#include "weaksup/errors.h"
#include "weaksup/io.h"
#include "weaksup/random.h"
#include "weaksup/rule_config.h"

namespace weaksup {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kClean:
      return "clean";
    case Method::kDistant:
      return "ds";
    case Method::kChannel:
      return "ds_cm";
    case Method::kSmoothChannel:
      return "ds_cm_smooth";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kClean, Method::kDistant, Method::kChannel, Method::kSmoothChannel}) {
    if (MethodName(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::vector<size_t> ParseSizes(std::string_view text) {
  std::vector<size_t> sizes;
  for (const std::string &field : SplitList(text, true)) {
    if (field == "full") {
      sizes.push_back(0);
      continue;
    }
    long long n = 0;
    try {
      n = ParseInt(field);
    } catch (const DataError &) {
      throw std::invalid_argument("bad size '" + field + "'");
    }
    if (n < 1) throw std::invalid_argument("sizes must be positive");
    sizes.push_back(static_cast<size_t>(n));
  }
  if (sizes.empty()) throw std::invalid_argument("empty size ladder");
  return sizes;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path) {
  IniFile ini = IniFile::Load(path);
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string &v) {
    std::filesystem::path p(v);
    return p.is_absolute() ? p : base / p;
  };
  auto require = [&](const std::string &key) {
    auto v = ini.Get("experiment", key);
    if (!v) throw std::invalid_argument("[experiment] needs '" + key + "'");
    return *v;
  };
  auto count = [&](const std::string &key, size_t fallback) {
    auto v = ini.Get("experiment", key);
    if (!v) return fallback;
    long long n = ParseInt(*v);
    if (n < 0) throw std::invalid_argument("[experiment] " + key + " must be non-negative");
    return static_cast<size_t>(n);
  };

  ExperimentConfig config;
  config.task = ParseTask(require("task"));
  config.schedule = TrainSchedule::ForTask(config.task);
  config.language = ini.GetOr("experiment", "language", "");
  config.train = resolve(require("train"));
  config.dev = resolve(require("dev"));
  config.test = resolve(require("test"));
  config.embeddings = resolve(require("embeddings"));
  if (auto v = ini.Get("experiment", "rules")) config.rules = resolve(*v);
  if (auto v = ini.Get("experiment", "weak")) config.weak = resolve(*v);
  if (auto v = ini.Get("experiment", "out")) config.out_dir = resolve(*v);
  if (auto v = ini.Get("experiment", "sizes")) config.sizes = ParseSizes(*v);
  config.seeds = count("seeds", config.seeds);
  config.master_seed = count("master_seed", 0);
  if (auto v = ini.Get("experiment", "methods")) {
    config.methods.clear();
    for (const std::string &m : SplitList(*v, true)) config.methods.push_back(ParseMethod(m));
  }
  config.schedule.epochs = count("epochs", config.schedule.epochs);
  config.schedule.batch_size = count("batch_size", config.schedule.batch_size);
  if (auto v = ini.Get("experiment", "learning_rate")) config.schedule.learning_rate = ParseDouble(*v);
  if (auto v = ini.Get("experiment", "beta")) config.beta = ParseDouble(*v);
  config.dev_downsize = ini.GetBool("experiment", "dev_downsize", true);
  if (ini.Get("experiment", "convergence_filter")) {
    config.convergence_filter = ini.GetBool("experiment", "convergence_filter", false);
  }
  config.max_reseeds = count("max_reseeds", config.max_reseeds);
  return config;
}

Dataset AttachWeakLayer(const Dataset &gold, const Dataset &weak) {
  if (gold.size() != weak.size()) {
    throw DataError("weak labels cover " + std::to_string(weak.size()) + " sentences, gold " +
                    std::to_string(gold.size()));
  }
  Dataset out = gold;
  std::set<std::string> labels(out.label_set.begin(), out.label_set.end());
  for (size_t i = 0; i < gold.size(); ++i) {
    const Sentence &w = weak.sentences[i];
    Sentence &s = out.sentences[i];
    if (w.Surfaces() != s.Surfaces()) {
      throw DataError("weak labels do not align with gold at sentence " + std::to_string(i));
    }
    if (gold.task == Task::kNer) {
      s.weak_tags = w.gold_tags ? *w.gold_tags : std::vector<std::string>(s.size(), "O");
    } else if (w.gold_class && *w.gold_class != kAbstain) {
      s.weak_class = w.gold_class;
      s.abstained = false;
    } else {
      s.weak_class.reset();
      s.abstained = true;
    }
  }
  for (const std::string &l : CollectLabels(out)) labels.insert(l);
  out.label_set.assign(labels.begin(), labels.end());
  return out;
}

ConfusionMatrix EstimateFromDataset(const Dataset &dataset, const std::vector<std::string> &labels,
                                    std::optional<double> beta, const EstimateOptions &options) {
  std::optional<ConfusionMatrix> estimate;
  if (dataset.task == Task::kNer) {
    std::vector<std::vector<std::string>> clean, noisy;
    for (const Sentence &s : dataset.sentences) {
      if (!s.gold_tags || !s.weak_tags) throw DataError("sentence lacks gold or weak tags");
      clean.push_back(*s.gold_tags);
      noisy.push_back(*s.weak_tags);
    }
    estimate = EstimateConfusionMatrix(clean, noisy, labels, options);
  } else {
    std::vector<std::string> clean, noisy;
    for (const Sentence &s : dataset.sentences) {
      if (!s.gold_class) throw DataError("headline lacks a gold class");
      if (!s.weak_class) continue;
      clean.push_back(*s.gold_class);
      noisy.push_back(*s.weak_class);
    }
    estimate = EstimateConfusionMatrix(std::span<const std::string>(clean),
                                       std::span<const std::string>(noisy), labels, options);
  }
  if (beta) return SmoothConfusionMatrix(*estimate, {*beta});
  return *estimate;
}

CurveData LoadCurveData(const ExperimentConfig &config, std::vector<std::string> *warnings) {
  CurveData data;
  data.task = config.task;
  data.train = ReadDataset(config.train.string(), config.task, config.language);
  data.dev = ReadDataset(config.dev.string(), config.task, config.language);
  data.test = ReadDataset(config.test.string(), config.task, config.language);
  const bool needs_weak = std::any_of(config.methods.begin(), config.methods.end(),
                                      [](Method m) { return m != Method::kClean; });
  if (config.weak) {
    data.train = AttachWeakLayer(data.train,
                                 ReadDataset(config.weak->string(), config.task, config.language));
  } else if (config.rules) {
    RuleConfig rules = LoadRuleConfig(*config.rules, config.task);
    AnnotationResult annotated = config.task == Task::kNer
                                     ? ApplyRules(data.train, rules.ner)
                                     : ApplyRules(data.train, *rules.topic);
    data.train = std::move(annotated.dataset);
    if (warnings) {
      warnings->insert(warnings->end(), rules.warnings.begin(), rules.warnings.end());
      warnings->insert(warnings->end(), annotated.warnings.begin(), annotated.warnings.end());
    }
  } else if (needs_weak) {
    throw std::invalid_argument("distant-supervision methods need 'rules' or 'weak'");
  }
  return data;
}

namespace {

std::vector<std::string> UnionLabels(const CurveData &data) {
  std::set<std::string> all;
  for (const Dataset *d : {&data.train, &data.dev, &data.test}) {
    all.insert(d->label_set.begin(), d->label_set.end());
  }
  std::vector<std::string> labels(all.begin(), all.end());
  return data.task == Task::kNer ? NerTagLabels(labels) : labels;
}

Dataset Subset(const Dataset &dataset, const std::vector<size_t> &indices, bool complement) {
  Dataset out = dataset;
  out.sentences.clear();
  size_t next = 0;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const bool selected = next < indices.size() && indices[next] == i;
    if (selected) ++next;
    if (selected != complement) out.sentences.push_back(dataset.sentences[i]);
  }
  return out;
}

}  // namespace

RunFunction MakeTrainingRunner(const ExperimentConfig &config, const CurveData &data,
                               const EmbeddingTable &embeddings) {
  std::vector<std::string> labels = UnionLabels(data);
  return [config, labels, &data, &embeddings](const RunRequest &request) {
    Model model = InitModel(data.task, labels, embeddings.dim(), request.train_seed);
    TrainSchedule schedule = config.schedule;
    schedule.seed = request.train_seed;
    const Dataset empty{data.task, {}, {}, data.train.language};
    std::optional<ConfusionMatrix> channel;
    if (request.method == Method::kChannel) {
      channel = EstimateFromDataset(request.clean, labels, std::nullopt);
    } else if (request.method == Method::kSmoothChannel) {
      channel = EstimateFromDataset(request.clean, labels, config.beta);
    }
    const Dataset &noisy = request.method == Method::kClean ? empty : request.noisy;
    TrainResult trained = Train(model, embeddings, request.clean, noisy,
                                channel ? &*channel : nullptr, schedule, request.dev);
    RunOutcome outcome;
    outcome.dev_metrics = trained.best_dev_metrics;
    outcome.test_metrics = Evaluate(trained.model, embeddings, data.test);
    outcome.test_f1 = HeadlineF1(data.task, outcome.test_metrics);
    return outcome;
  };
}

CurveResult RunCurve(const ExperimentConfig &config, const CurveData &data,
                     const RunFunction &run) {
  if (config.seeds < 1) throw std::invalid_argument("need at least one seed");
  if (data.train.empty()) throw DataError("empty training set");
  std::vector<size_t> sizes;
  for (size_t s : config.sizes) sizes.push_back(s == 0 ? data.train.size() : s);
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > data.train.size()) {
      throw std::invalid_argument("size " + std::to_string(sizes[i]) + " exceeds the " +
                                  std::to_string(data.train.size()) + " training sentences");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("size ladder must be strictly increasing");
    }
  }

  CurveResult result;
  for (Method method : config.methods) {
    for (size_t size_index = 0; size_index < sizes.size(); ++size_index) {
      const size_t size = sizes[size_index];
      std::vector<double> f1s;
      for (size_t seed_index = 0; seed_index < config.seeds; ++seed_index) {
        std::optional<CurveRun> accepted;
        for (size_t attempt = 0; attempt <= config.max_reseeds && !accepted; ++attempt) {
          const uint64_t sample_seed = DeriveSeed({config.master_seed, seed_index, attempt});
          RunRequest request;
          request.method = method;
          request.size = size;
          request.seed_index = seed_index;
          request.attempt = attempt;
          request.train_seed =
              DeriveSeed({config.master_seed, size_index, seed_index, attempt, 1});
          std::vector<size_t> picked = DownsampleIndices(data.train.size(), size, sample_seed);
          request.clean = Subset(data.train, picked, false);
          request.noisy = Subset(data.train, picked, true);
          request.dev = data.dev;
          if (config.dev_downsize && !data.dev.empty()) {
            size_t target = DevDownsizeTarget(data.dev.size(), size, data.train.size());
            request.dev = Downsample(data.dev, target, DeriveSeed({sample_seed, 2}));
          }
          RunOutcome outcome = run(request);
          if (config.FilterEnabled() &&
              ConvergenceFilter(outcome.dev_metrics) == RunVerdict::kFlag) {
            ++result.reseeds;
            continue;
          }
          accepted = CurveRun{method, size, seed_index, attempt + 1, outcome.test_f1,
                              std::move(outcome.test_metrics)};
        }
        if (!accepted) {
          throw FlaggedRunError("run " + std::string(MethodName(method)) + " size " +
                                std::to_string(size) + " seed " + std::to_string(seed_index) +
                                " degenerate after " + std::to_string(config.max_reseeds) +
                                " reseeds");
        }
        f1s.push_back(accepted->test_f1);
        result.runs.push_back(std::move(*accepted));
      }
      result.points.push_back({method, size, AggregateRuns(f1s)});
    }
  }
  return result;
}

std::string CurveCsv(const CurveResult &result) {
  std::string out = "setting,size,seed,f1\n";
  for (const CurveRun &run : result.runs) {
    out += std::string(MethodName(run.method)) + ',' + std::to_string(run.size) + ',' +
           std::to_string(run.seed_index) + ',' + FormatFixed(run.test_f1, 6) + '\n';
  }
  out += "\nsetting,size,mean_f1,stderr\n";
  for (const CurvePoint &point : result.points) {
    out += std::string(MethodName(point.method)) + ',' + std::to_string(point.size) + ',' +
           FormatFixed(point.aggregate.mean, 6) + ',' +
           FormatFixed(point.aggregate.standard_error, 6) + '\n';
  }
  return out;
}

std::string CurveMetricsCsv(const CurveResult &result) {
  std::string out;
  for (size_t i = 0; i < result.runs.size(); ++i) {
    const CurveRun &run = result.runs[i];
    out += MetricsCsv(run.test_metrics,
                      std::string(MethodName(run.method)) + "@" + std::to_string(run.size),
                      std::to_string(run.seed_index), i == 0);
  }
  return out;
}

}  // namespace weaksup
