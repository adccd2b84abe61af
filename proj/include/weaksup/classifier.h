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

// Linear-softmax reference models over pretrained word embeddings: a
// headline classifier (mean embedding) and a token tagger (embedding window
// of +-1). Noisy examples are trained through a confusion-matrix channel
// stacked on the clean output distribution.

#ifndef WEAKSUP_CLASSIFIER_H_
#define WEAKSUP_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weaksup/corpus.h"
#include "weaksup/eval.h"
#include "weaksup/noisemodel.h"

namespace weaksup {

class EmbeddingTable {
 public:
  explicit EmbeddingTable(size_t dim) : dim_(dim) {}

  size_t dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }

  // Throws DataError on a dimension mismatch or a non-finite value.
  void Add(std::string token, std::vector<double> vector);

  // Exact match, then the lowercased NFC form when lowercase_fallback is
  // set. Returns nullptr for out-of-vocabulary tokens, which featurize as
  // the zero vector.
  const std::vector<double> *Find(std::string_view token) const;

  bool lowercase_fallback = true;

 private:
  size_t dim_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Optional "count dim" header, then "token v1 ... vD" per line.
EmbeddingTable ParseEmbeddings(std::string_view text);
EmbeddingTable LoadEmbeddings(const std::filesystem::path &path);

struct Model {
  Task task = Task::kTopic;
  std::vector<std::string> labels;
  size_t embedding_dim = 0;
  // K x F row-major, F = D (topic) or 3D (NER).
  std::vector<double> weights;
  std::vector<double> bias;

  size_t num_labels() const { return labels.size(); }
  size_t feature_dim() const { return task == Task::kNer ? 3 * embedding_dim : embedding_dim; }
  size_t LabelIndex(std::string_view label) const;

  bool operator==(const Model &) const = default;
};

// Output labels for a dataset: NerTagLabels(label_set) or the classes.
std::vector<std::string> ModelLabels(const Dataset &dataset);

// Weights uniform in [-0.1, 0.1] from the seed, zero bias.
Model InitModel(Task task, std::vector<std::string> labels, size_t embedding_dim,
                uint64_t seed);

using FeatureVector = std::vector<double>;

// One feature vector per decision: the mean token embedding for a headline,
// the concatenated (previous, current, next) embeddings per token for NER
// with zero padding at the edges.
std::vector<FeatureVector> Featurize(Task task, const EmbeddingTable &embeddings,
                                     const Sentence &sentence);

std::vector<double> Softmax(std::span<const double> logits);

// Clean output distribution per decision.
std::vector<std::vector<double>> PredictDistributions(const Model &model,
                                                      const EmbeddingTable &embeddings,
                                                      const Sentence &sentence);

struct Decision {
  FeatureVector features;
  size_t label = 0;
};

struct Gradients {
  std::vector<double> weights;
  std::vector<double> bias;
};

struct LossAndGradients {
  double loss = 0;
  Gradients gradients;
};

// Mean cross-entropy over the decisions of the clean distribution, or of the
// channel-composed distribution when `channel` is non-null.
LossAndGradients ComputeLossAndGradients(const Model &model, std::span<const Decision> batch,
                                         const ConfusionMatrix *channel);

// Decisions for a sentence from its gold (or weak) layer.
std::vector<Decision> MakeDecisions(const Model &model, const EmbeddingTable &embeddings,
                                    const Sentence &sentence, TagLayer layer);

struct TrainSchedule {
  size_t epochs = 50;
  double learning_rate = 0.1;
  uint64_t seed = 0;
  // Per epoch, draw min(|clean|, |noisy|) noisy sentences afresh.
  bool subsample_noisy = true;
  double clean_weight = 1.0;
  double noisy_weight = 1.0;
  // Sentences per gradient step; 0 means one full-batch step per epoch in
  // corpus order (clean first, then the noisy draw).
  size_t batch_size = 0;
  // Keep a copy of the parameters after every epoch in the history.
  bool record_parameters = false;

  static TrainSchedule ForTask(Task task);
  void Validate() const;
};

struct EpochRecord {
  size_t epoch = 0;
  double train_loss = 0;
  double dev_f1 = 0;
  size_t clean_sentences = 0;
  size_t noisy_sentences = 0;
  size_t steps = 0;
  std::vector<double> parameters;  // weights then bias, when recorded
};

struct TrainResult {
  Model model;  // parameters of the best development epoch
  std::vector<EpochRecord> history;
  size_t best_epoch = 0;
  Metrics best_dev_metrics;
};

// Gradient descent on clean sentences (gold layer) plus noisy sentences
// (weak layer). The objective of a step is
//   (clean_weight * sum of clean losses + noisy_weight * sum of noisy
//    losses) / number of decisions,
// noisy losses going through `channel` when it is non-null. Each epoch is
// scored on `dev` (span micro F1 for NER, macro F1 for topics) and the best
// epoch's parameters are returned; ties keep the earlier epoch. Topic
// sentences the rules abstained on are not used as noisy examples.
TrainResult Train(const Model &initial, const EmbeddingTable &embeddings, const Dataset &clean,
                  const Dataset &noisy, const ConfusionMatrix *channel,
                  const TrainSchedule &schedule, const Dataset &dev);

struct Predictions {
  std::vector<std::vector<std::string>> tags;  // NER
  std::vector<std::string> classes;            // topic
};

// Argmax per decision; NER sequences are repaired to strict BIO2.
Predictions Predict(const Model &model, const EmbeddingTable &embeddings,
                    const Dataset &dataset);

// Span micro F1 (NER) or per-class metrics with macro F1 (topic) of the
// model on a gold dataset.
Metrics Evaluate(const Model &model, const EmbeddingTable &embeddings, const Dataset &gold);
double HeadlineF1(Task task, const Metrics &metrics);

std::string WriteCheckpoint(const Model &model);
Model ParseCheckpoint(std::string_view text);

}  // namespace weaksup

#endif  // WEAKSUP_CLASSIFIER_H_
