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

// weaksup command-line tool. Exit codes: 0 success, 1 usage, 2 data or
// format error, 3 a curve run stayed degenerate after every reseed.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weaksup/annotators.h"
#include "weaksup/classifier.h"
#include "weaksup/corpus.h"
#include "weaksup/errors.h"
#include "weaksup/eval.h"
#include "weaksup/experiment.h"
#include "weaksup/io.h"
#include "weaksup/noisemodel.h"
#include "weaksup/rule_config.h"

namespace weaksup {
namespace {

namespace fs = std::filesystem;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kFlagged = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Warn(const std::vector<std::string> &warnings) {
  for (const std::string &w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string Extension(Task task) { return task == Task::kNer ? ".conll" : ".tsv"; }

std::string Serialize(const Dataset &d, TagLayer layer) {
  if (d.task == Task::kTopic) return WriteTopicTsv(d, layer);
  return layer == TagLayer::kGold ? WriteConll(d) : WriteConllLayer(d, layer);
}

std::vector<double> ParseRatios(const std::string &text) {
  std::vector<double> out;
  try {
    for (const std::string &f : SplitList(text, true)) out.push_back(ParseDouble(f));
  } catch (const DataError &) {
    throw UsageError("--ratios must be numbers");
  }
  if (out.size() != 3) throw UsageError("--ratios needs three values");
  return out;
}

// Labels over which a confusion matrix or model is defined.
std::vector<std::string> LabelUnion(Task task, const std::vector<const Dataset *> &sets) {
  std::set<std::string> all;
  for (const Dataset *d : sets) {
    all.insert(d->label_set.begin(), d->label_set.end());
  }
  all.erase(std::string(kAbstain));
  std::vector<std::string> labels(all.begin(), all.end());
  return task == Task::kNer ? NerTagLabels(labels) : labels;
}

Dataset Annotate(const Dataset &d, const fs::path &rules, std::optional<uint64_t> seed,
                 size_t *abstained) {
  RuleConfig cfg = LoadRuleConfig(rules, d.task);
  Warn(cfg.warnings);
  AnnotationResult result;
  if (d.task == Task::kNer) {
    result = ApplyRules(d, cfg.ner);
  } else {
    if (seed) cfg.topic->tie_seed = *seed;
    result = ApplyRules(d, *cfg.topic);
  }
  Warn(result.warnings);
  if (abstained) *abstained = result.abstained;
  return std::move(result.dataset);
}

// Gold side and weak side of a rule evaluation, aligned sentence by sentence.
Metrics ScoreWeak(const Dataset &gold, const Dataset &weak) {
  if (gold.size() != weak.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) + " sentences, weak " +
                    std::to_string(weak.size()));
  }
  if (gold.task == Task::kNer) {
    std::vector<std::vector<std::string>> pred;
    for (size_t i = 0; i < weak.sentences.size(); ++i) {
      const Sentence &w = weak.sentences[i];
      pred.push_back(w.weak_tags ? *w.weak_tags
                                 : w.gold_tags ? *w.gold_tags
                                               : std::vector<std::string>(w.size(), "O"));
    }
    return SpanF1(gold, pred);
  }
  std::vector<std::string> g, p;
  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    const Sentence &w = weak.sentences[i];
    if (!gold.sentences[i].gold_class) throw DataError("gold headline without a class");
    g.push_back(*gold.sentences[i].gold_class);
    p.push_back(w.weak_class ? *w.weak_class : w.gold_class.value_or(std::string(kAbstain)));
  }
  std::vector<std::string> labels = gold.label_set;
  labels.erase(std::remove(labels.begin(), labels.end(), std::string(kAbstain)), labels.end());
  return ClassificationMetrics(g, p, labels);
}

void PrintMetrics(Task task, const Metrics &m) {
  std::cout << FormatMetricsTable(m);
  std::cout << "headline " << (task == Task::kNer ? "micro" : "macro") << " F1 "
            << FormatFixed(100 * HeadlineF1(task, m), 2) << '\n';
}

std::string HistoryCsv(const TrainResult &r) {
  std::string out = "epoch,train_loss,dev_f1,clean_sentences,noisy_sentences,steps\n";
  for (const EpochRecord &e : r.history) {
    out += std::to_string(e.epoch) + ',' + FormatFixed(e.train_loss, 6) + ',' +
           FormatFixed(e.dev_f1, 6) + ',' + std::to_string(e.clean_sentences) + ',' +
           std::to_string(e.noisy_sentences) + ',' + std::to_string(e.steps) + '\n';
  }
  return out;
}

int Run(int argc, char **argv) {
  CLI::App app{"Distant supervision and noisy-label training toolkit"};
  app.require_subcommand(1);
  std::map<std::string, Task> tasks{{"ner", Task::kNer}, {"topic", Task::kTopic}};
  std::map<std::string, bool> on_off{{"on", true}, {"off", false}};

  // split
  auto *split = app.add_subcommand("split", "Partition a corpus into train/dev/test");
  Task split_task = Task::kNer;
  std::string split_in, split_out, split_ratios = "0.7,0.1,0.2", split_unit = "sentence";
  uint64_t split_seed = 0;
  split->add_option("--task", split_task, "ner or topic")->required()->transform(CLI::CheckedTransformer(tasks));
  split->add_option("--input", split_in, "Corpus file")->required();
  split->add_option("--ratios", split_ratios, "train,dev,test fractions");
  split->add_option("--unit", split_unit, "sentence or token")->check(CLI::IsMember({"sentence", "token"}));
  split->add_option("--seed", split_seed);
  split->add_option("--out", split_out, "Output directory")->required();

  // annotate
  auto *annotate = app.add_subcommand("annotate", "Apply labeling rules to a corpus");
  Task ann_task = Task::kNer;
  std::string ann_in, ann_rules, ann_out, ann_lang;
  std::optional<uint64_t> ann_seed;
  annotate->add_option("--task", ann_task)->required()->transform(CLI::CheckedTransformer(tasks));
  annotate->add_option("--input", ann_in)->required();
  annotate->add_option("--rules", ann_rules, "Rule config (INI)")->required();
  annotate->add_option("--lang", ann_lang);
  annotate->add_option("--seed", ann_seed, "Tie-break seed (topic)");
  annotate->add_option("--out", ann_out)->required();

  // eval-rules
  auto *eval_rules = app.add_subcommand("eval-rules", "Score weak labels against gold");
  Task er_task = Task::kNer;
  std::string er_gold, er_weak, er_out;
  eval_rules->add_option("--task", er_task)->required()->transform(CLI::CheckedTransformer(tasks));
  eval_rules->add_option("--gold", er_gold)->required();
  eval_rules->add_option("--weak", er_weak)->required();
  eval_rules->add_option("--out", er_out, "Optional metrics CSV");

  // estimate-cm
  auto *estimate = app.add_subcommand("estimate-cm", "Estimate a confusion matrix from clean/weak pairs");
  Task cm_task = Task::kNer;
  std::string cm_clean, cm_weak, cm_out;
  std::optional<double> cm_beta;
  bool cm_skip_outside = false;
  estimate->add_option("--task", cm_task, "ner (default) or topic")->transform(CLI::CheckedTransformer(tasks));
  estimate->add_option("--clean", cm_clean)->required();
  estimate->add_option("--weak", cm_weak)->required();
  estimate->add_option("--beta", cm_beta, "Smoothing exponent in (0, 1]");
  estimate->add_flag("--skip-outside", cm_skip_outside, "Ignore pairs whose clean tag is O");
  estimate->add_option("--out", cm_out)->required();

  // train
  auto *train = app.add_subcommand("train", "Train one setting");
  Task tr_task = Task::kNer;
  std::string tr_train, tr_dev, tr_emb, tr_out, tr_weak, tr_rules, tr_cm, tr_log, tr_method = "clean";
  std::optional<size_t> tr_clean_size;
  double tr_beta = kDefaultBeta;
  std::optional<double> tr_lr;
  size_t tr_epochs = 50, tr_batch = 0;
  uint64_t tr_seed = 0;
  bool tr_no_subsample = false;
  train->add_option("--task", tr_task)->required()->transform(CLI::CheckedTransformer(tasks));
  train->add_option("--train", tr_train, "Gold training data")->required();
  train->add_option("--dev", tr_dev)->required();
  train->add_option("--embeddings", tr_emb)->required();
  train->add_option("--method", tr_method)->check(CLI::IsMember({"clean", "ds", "ds_cm", "ds_cm_smooth"}));
  train->add_option("--clean-size", tr_clean_size, "Clean subset size; the rest is weakly labeled");
  train->add_option("--weak", tr_weak, "Weak labels aligned with --train");
  train->add_option("--rules", tr_rules, "Rule config producing weak labels");
  train->add_option("--cm", tr_cm, "Confusion matrix file instead of estimating one");
  train->add_option("--beta", tr_beta);
  train->add_option("--epochs", tr_epochs);
  train->add_option("--learning-rate", tr_lr);
  train->add_option("--batch-size", tr_batch, "0 for full batch");
  train->add_flag("--no-subsample", tr_no_subsample);
  train->add_option("--seed", tr_seed);
  train->add_option("--log", tr_log, "Per-epoch history CSV");
  train->add_option("--out", tr_out, "Checkpoint path")->required();

  // evaluate
  auto *evaluate = app.add_subcommand("evaluate", "Score a checkpoint");
  std::string ev_model, ev_emb, ev_test, ev_out, ev_pred;
  evaluate->add_option("--model", ev_model)->required();
  evaluate->add_option("--embeddings", ev_emb)->required();
  evaluate->add_option("--test", ev_test)->required();
  evaluate->add_option("--out", ev_out, "Optional metrics CSV");
  evaluate->add_option("--predictions", ev_pred, "Optional predicted labels file");

  // curve
  auto *curve = app.add_subcommand("curve", "Learning-curve sweep");
  std::string cv_config, cv_emb, cv_out, cv_sizes, cv_methods, cv_dev_downsize;
  std::optional<uint64_t> cv_seed;
  std::optional<size_t> cv_seeds, cv_epochs;
  std::optional<double> cv_beta;
  curve->add_option("--config", cv_config, "Experiment INI")->required();
  curve->add_option("--sizes", cv_sizes, "e.g. 10,20,50,full");
  curve->add_option("--seeds", cv_seeds, "Runs per size");
  curve->add_option("--seed", cv_seed, "Master seed");
  curve->add_option("--methods", cv_methods, "clean,ds,ds_cm,ds_cm_smooth");
  curve->add_option("--beta", cv_beta);
  curve->add_option("--epochs", cv_epochs);
  curve->add_option("--dev-downsize", cv_dev_downsize)->check(CLI::IsMember({"on", "off"}));
  curve->add_option("--embeddings", cv_emb);
  curve->add_option("--out", cv_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*split) {
      SplitSpec spec;
      std::vector<double> r = ParseRatios(split_ratios);
      spec.ratios = {r[0], r[1], r[2]};
      spec.unit = split_unit == "token" ? SplitUnit::kToken : SplitUnit::kSentence;
      spec.seed = split_seed;
      Dataset d = ReadDataset(split_in, split_task);
      SplitResult parts = SplitDataset(d, spec);
      fs::create_directories(split_out);
      const std::string ext = Extension(split_task);
      for (auto [name, part] : {std::pair{"train", &parts.train}, {"dev", &parts.dev}, {"test", &parts.test}}) {
        WriteFileAtomic(fs::path(split_out) / (std::string(name) + ext), Serialize(*part, TagLayer::kGold));
        std::cout << name << ": " << part->size() << " sentences, " << part->TokenCount() << " tokens\n";
      }
    } else if (*annotate) {
      Dataset d = ReadDataset(ann_in, ann_task, ann_lang);
      size_t abstained = 0;
      Dataset weak = Annotate(d, ann_rules, ann_seed, &abstained);
      WriteFileAtomic(ann_out, Serialize(weak, TagLayer::kWeak));
      std::cout << "annotated " << weak.size() << " sentences";
      if (ann_task == Task::kTopic) std::cout << ", " << abstained << " abstained";
      std::cout << '\n';
    } else if (*eval_rules) {
      Dataset gold = ReadDataset(er_gold, er_task);
      Dataset weak = ReadDataset(er_weak, er_task);
      Metrics m = ScoreWeak(gold, weak);
      PrintMetrics(er_task, m);
      if (!er_out.empty()) WriteFileAtomic(er_out, MetricsCsv(m, "rules", "0", true));
    } else if (*estimate) {
      Dataset clean = ReadDataset(cm_clean, cm_task);
      Dataset weak = ReadDataset(cm_weak, cm_task);
      Dataset paired = AttachWeakLayer(clean, weak);
      std::vector<std::string> labels = LabelUnion(cm_task, {&clean, &weak});
      ConfusionMatrix cm = EstimateFromDataset(paired, labels, cm_beta, {.include_outside = !cm_skip_outside});
      WriteFileAtomic(cm_out, WriteConfusionMatrix(cm));
      std::cout << "wrote " << cm.size() << "x" << cm.size() << " matrix from " << paired.size()
                << " sentences\n";
    } else if (*train) {
      const Method method = ParseMethod(tr_method);
      Dataset full = ReadDataset(tr_train, tr_task);
      Dataset dev = ReadDataset(tr_dev, tr_task);
      if (method != Method::kClean) {
        if (!tr_weak.empty()) {
          full = AttachWeakLayer(full, ReadDataset(tr_weak, tr_task));
        } else if (!tr_rules.empty()) {
          full = Annotate(full, tr_rules, std::nullopt, nullptr);
        } else {
          bool has_weak = std::all_of(full.sentences.begin(), full.sentences.end(), [](const Sentence &s) {
            return s.weak_tags || s.weak_class || s.abstained;
          });
          if (!has_weak) throw UsageError("method " + tr_method + " needs --weak or --rules");
        }
      }
      Dataset clean = full, noisy{tr_task};
      if (tr_clean_size) {
        if (*tr_clean_size == 0 || *tr_clean_size > full.size()) {
          throw UsageError("--clean-size must lie in [1, " + std::to_string(full.size()) + "]");
        }
        std::vector<size_t> picked = DownsampleIndices(full.size(), *tr_clean_size, tr_seed);
        std::vector<bool> in(full.size(), false);
        for (size_t i : picked) in[i] = true;
        clean.sentences.clear();
        noisy = full;
        noisy.sentences.clear();
        for (size_t i = 0; i < full.size(); ++i) {
          (in[i] ? clean : noisy).sentences.push_back(full.sentences[i]);
        }
      } else if (method != Method::kClean) {
        noisy = full;
      }
      if (method == Method::kClean) noisy.sentences.clear();

      EmbeddingTable emb = LoadEmbeddings(tr_emb);
      std::vector<std::string> labels = LabelUnion(tr_task, {&full, &dev});
      std::optional<ConfusionMatrix> cm;
      if (method == Method::kChannel || method == Method::kSmoothChannel) {
        if (!tr_cm.empty()) {
          cm = ParseConfusionMatrix(ReadFile(tr_cm));
        } else {
          cm = EstimateFromDataset(clean, labels,
                                   method == Method::kSmoothChannel ? std::optional(tr_beta) : std::nullopt);
        }
      }
      TrainSchedule schedule = TrainSchedule::ForTask(tr_task);
      schedule.epochs = tr_epochs;
      if (tr_lr) schedule.learning_rate = *tr_lr;
      schedule.batch_size = tr_batch;
      schedule.seed = tr_seed;
      schedule.subsample_noisy = !tr_no_subsample;
      Model init = InitModel(tr_task, labels, emb.dim(), DeriveSeed({tr_seed, 0}));
      TrainResult r = Train(init, emb, clean, noisy, cm ? &*cm : nullptr, schedule, dev);
      WriteFileAtomic(tr_out, WriteCheckpoint(r.model));
      if (!tr_log.empty()) WriteFileAtomic(tr_log, HistoryCsv(r));
      std::cout << "best epoch " << r.best_epoch << " dev F1 "
                << FormatFixed(100 * HeadlineF1(tr_task, r.best_dev_metrics), 2) << " ("
                << clean.size() << " clean, " << noisy.size() << " weak sentences)\n";
    } else if (*evaluate) {
      Model model = ParseCheckpoint(ReadFile(ev_model));
      EmbeddingTable emb = LoadEmbeddings(ev_emb);
      Dataset test = ReadDataset(ev_test, model.task);
      Metrics m = Evaluate(model, emb, test);
      PrintMetrics(model.task, m);
      if (!ev_out.empty()) WriteFileAtomic(ev_out, MetricsCsv(m, "model", "0", true));
      if (!ev_pred.empty()) {
        Predictions p = Predict(model, emb, test);
        Dataset out = test;
        for (size_t i = 0; i < out.sentences.size(); ++i) {
          if (model.task == Task::kNer) {
            out.sentences[i].weak_tags = p.tags[i];
          } else {
            out.sentences[i].weak_class = p.classes[i];
          }
        }
        WriteFileAtomic(ev_pred, Serialize(out, TagLayer::kWeak));
      }
    } else if (*curve) {
      ExperimentConfig config = LoadExperimentConfig(cv_config);
      if (!cv_sizes.empty()) config.sizes = ParseSizes(cv_sizes);
      if (cv_seeds) config.seeds = *cv_seeds;
      if (cv_seed) config.master_seed = *cv_seed;
      if (!cv_methods.empty()) {
        config.methods.clear();
        for (const std::string &m : SplitList(cv_methods, true)) config.methods.push_back(ParseMethod(m));
      }
      if (cv_beta) config.beta = *cv_beta;
      if (cv_epochs) config.schedule.epochs = *cv_epochs;
      if (!cv_dev_downsize.empty()) config.dev_downsize = on_off.at(cv_dev_downsize);
      if (!cv_emb.empty()) config.embeddings = cv_emb;
      if (!cv_out.empty()) config.out_dir = cv_out;
      config.schedule.Validate();
      if (config.seeds < 1) throw UsageError("seeds must be at least 1");

      std::vector<std::string> warnings;
      CurveData data = LoadCurveData(config, &warnings);
      Warn(warnings);
      EmbeddingTable emb = LoadEmbeddings(config.embeddings);
      CurveResult result = RunCurve(config, data, MakeTrainingRunner(config, data, emb));
      fs::create_directories(config.out_dir);
      WriteFileAtomic(config.out_dir / "curve.csv", CurveCsv(result));
      WriteFileAtomic(config.out_dir / "runs_metrics.csv", CurveMetricsCsv(result));
      for (const CurvePoint &p : result.points) {
        std::cout << MethodName(p.method) << " size " << p.size << ": "
                  << FormatFixed(100 * p.aggregate.mean, 2) << " +- "
                  << FormatFixed(100 * p.aggregate.standard_error, 2) << '\n';
      }
      if (result.reseeds) std::cout << result.reseeds << " degenerate run(s) reseeded\n";
    }
  } catch (const FlaggedRunError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFlagged;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return 0;
}

}  // namespace
}  // namespace weaksup

int main(int argc, char **argv) { return weaksup::Run(argc, argv); }
