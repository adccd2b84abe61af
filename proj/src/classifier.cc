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

#include "weaksup/classifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "weaksup/errors.h"
#include "weaksup/io.h"
#include "weaksup/random.h"
#include "weaksup/text.h"

namespace weaksup {

void EmbeddingTable::Add(std::string token, std::vector<double> vector) {
  if (vector.size() != dim_) {
    throw DataError("embedding for '" + token + "' has " + std::to_string(vector.size()) +
                    " values, expected " + std::to_string(dim_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) throw DataError("non-finite embedding value for '" + token + "'");
  }
  vectors_.insert_or_assign(std::move(token), std::move(vector));
}

const std::vector<double> *EmbeddingTable::Find(std::string_view token) const {
  auto it = vectors_.find(std::string(token));
  if (it != vectors_.end()) return &it->second;
  if (lowercase_fallback) {
    it = vectors_.find(Normalize(token, {.lowercase = true}));
    if (it != vectors_.end()) return &it->second;
  }
  return nullptr;
}

EmbeddingTable ParseEmbeddings(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  size_t first = 0;
  size_t dim = 0;
  if (!lines.empty()) {
    std::vector<std::string> head = SplitFields(Trim(lines[0]), ' ');
    if (head.size() == 2) {
      try {
        ParseInt(head[0]);
        dim = static_cast<size_t>(ParseInt(head[1]));
        first = 1;
      } catch (const DataError &) {
        dim = 0;
      }
    }
  }
  std::optional<EmbeddingTable> table;
  if (dim > 0) table.emplace(dim);
  for (size_t n = first; n < lines.size(); ++n) {
    std::string trimmed = Trim(lines[n]);
    if (trimmed.empty()) continue;
    std::vector<std::string> fields = SplitFields(trimmed, ' ');
    fields.erase(std::remove(fields.begin(), fields.end(), std::string()), fields.end());
    if (fields.size() < 2) throw ParseError(n + 1, "expected token followed by values");
    if (!table) table.emplace(fields.size() - 1);
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    try {
      for (size_t f = 1; f < fields.size(); ++f) values.push_back(ParseDouble(fields[f]));
      table->Add(Normalize(fields[0]), std::move(values));
    } catch (const ParseError &) {
      throw;
    } catch (const DataError &e) {
      throw ParseError(n + 1, e.what());
    }
  }
  if (!table) throw DataError("embedding file has no vectors");
  return std::move(*table);
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path &path) {
  try {
    return ParseEmbeddings(ReadFile(path));
  } catch (const ParseError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

size_t Model::LabelIndex(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw DataError("label '" + std::string(label) + "' is not in the model's label set");
  }
  return static_cast<size_t>(it - labels.begin());
}

std::vector<std::string> ModelLabels(const Dataset &dataset) {
  return dataset.task == Task::kNer ? NerTagLabels(dataset.label_set) : dataset.label_set;
}

Model InitModel(Task task, std::vector<std::string> labels, size_t embedding_dim,
                uint64_t seed) {
  if (labels.empty()) throw std::invalid_argument("model needs at least one label");
  if (embedding_dim == 0) throw std::invalid_argument("embedding dimension must be positive");
  Model model;
  model.task = task;
  model.labels = std::move(labels);
  model.embedding_dim = embedding_dim;
  model.weights.resize(model.num_labels() * model.feature_dim());
  Rng rng(seed);
  for (double &w : model.weights) w = rng.Uniform(-0.1, 0.1);
  model.bias.assign(model.num_labels(), 0.0);
  return model;
}

std::vector<FeatureVector> Featurize(Task task, const EmbeddingTable &embeddings,
                                     const Sentence &sentence) {
  const size_t d = embeddings.dim();
  const size_t n = sentence.size();
  std::vector<const std::vector<double> *> vectors;
  vectors.reserve(n);
  for (const Token &token : sentence.tokens) vectors.push_back(embeddings.Find(token.surface));

  if (task == Task::kTopic) {
    if (n == 0) throw DataError("cannot featurize an empty headline");
    FeatureVector mean(d, 0.0);
    for (const auto *v : vectors) {
      if (!v) continue;
      for (size_t f = 0; f < d; ++f) mean[f] += (*v)[f];
    }
    for (double &x : mean) x /= static_cast<double>(n);
    return {std::move(mean)};
  }

  std::vector<FeatureVector> features;
  features.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FeatureVector window(3 * d, 0.0);
    for (int offset = -1; offset <= 1; ++offset) {
      const long long j = static_cast<long long>(i) + offset;
      if (j < 0 || j >= static_cast<long long>(n) || !vectors[j]) continue;
      std::copy(vectors[j]->begin(), vectors[j]->end(),
                window.begin() + static_cast<std::ptrdiff_t>((offset + 1) * d));
    }
    features.push_back(std::move(window));
  }
  return features;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> out(logits.begin(), logits.end());
  if (out.empty()) return out;
  const double peak = *std::max_element(out.begin(), out.end());
  double sum = 0;
  for (double &x : out) {
    x = std::exp(x - peak);
    sum += x;
  }
  for (double &x : out) x /= sum;
  return out;
}

namespace {

std::vector<double> Logits(const Model &model, const FeatureVector &x) {
  const size_t f_dim = model.feature_dim();
  if (x.size() != f_dim) throw std::invalid_argument("feature size does not match model");
  std::vector<double> z(model.bias);
  for (size_t k = 0; k < z.size(); ++k) {
    const double *row = model.weights.data() + k * f_dim;
    double acc = 0;
    for (size_t f = 0; f < f_dim; ++f) acc += row[f] * x[f];
    z[k] += acc;
  }
  return z;
}

// Adds weight * loss of one decision and its gradient. Without a channel
// the target column is the indicator of the label; the same arithmetic is
// used in both cases so an identity channel reproduces the clean path
// bit for bit.
double AccumulateDecision(const Model &model, const Decision &decision,
                          const ConfusionMatrix *channel, double weight, Gradients &grads) {
  const size_t k_dim = model.num_labels();
  const size_t f_dim = model.feature_dim();
  if (decision.label >= k_dim) throw DataError("decision label outside the model's labels");
  std::vector<double> p = Softmax(Logits(model, decision.features));
  const size_t y = decision.label;

  std::vector<double> column(k_dim, 0.0);
  if (channel) {
    for (size_t i = 0; i < k_dim; ++i) column[i] = (*channel)(i, y);
  } else {
    column[y] = 1.0;
  }
  double q = 0;
  for (size_t i = 0; i < k_dim; ++i) q += p[i] * column[i];
  if (q <= 0.0) {
    // The channel cannot produce this noisy label from any clean label the
    // model puts mass on; there is nothing to learn from the decision.
    return weight * -std::log(std::numeric_limits<double>::min());
  }
  for (size_t k = 0; k < k_dim; ++k) {
    const double dz = weight * (p[k] - p[k] * column[k] / q);
    grads.bias[k] += dz;
    double *row = grads.weights.data() + k * f_dim;
    for (size_t f = 0; f < f_dim; ++f) row[f] += dz * decision.features[f];
  }
  return weight * -std::log(q);
}

Gradients ZeroGradients(const Model &model) {
  return {std::vector<double>(model.weights.size(), 0.0),
          std::vector<double>(model.bias.size(), 0.0)};
}

void Scale(Gradients &grads, double factor) {
  for (double &g : grads.weights) g *= factor;
  for (double &g : grads.bias) g *= factor;
}

const ConfusionMatrix *CheckChannel(const Model &model, const ConfusionMatrix *channel,
                                    std::optional<ConfusionMatrix> &storage) {
  if (!channel) return nullptr;
  if (channel->labels() == model.labels) return channel;
  try {
    storage = channel->Reordered(model.labels);
  } catch (const std::exception &) {
    throw DataError("confusion matrix labels do not match the model's labels");
  }
  return &*storage;
}

}  // namespace

std::vector<std::vector<double>> PredictDistributions(const Model &model,
                                                      const EmbeddingTable &embeddings,
                                                      const Sentence &sentence) {
  if (embeddings.dim() != model.embedding_dim) {
    throw DataError("embedding dimension does not match the model");
  }
  std::vector<std::vector<double>> out;
  for (const FeatureVector &x : Featurize(model.task, embeddings, sentence)) {
    out.push_back(Softmax(Logits(model, x)));
  }
  return out;
}

LossAndGradients ComputeLossAndGradients(const Model &model, std::span<const Decision> batch,
                                         const ConfusionMatrix *channel) {
  std::optional<ConfusionMatrix> storage;
  channel = CheckChannel(model, channel, storage);
  LossAndGradients out;
  out.gradients = ZeroGradients(model);
  if (batch.empty()) return out;
  for (const Decision &decision : batch) {
    out.loss += AccumulateDecision(model, decision, channel, 1.0, out.gradients);
  }
  const double n = static_cast<double>(batch.size());
  out.loss /= n;
  Scale(out.gradients, 1.0 / n);
  return out;
}

std::vector<Decision> MakeDecisions(const Model &model, const EmbeddingTable &embeddings,
                                    const Sentence &sentence, TagLayer layer) {
  std::vector<FeatureVector> features = Featurize(model.task, embeddings, sentence);
  std::vector<Decision> decisions;
  decisions.reserve(features.size());
  if (model.task == Task::kTopic) {
    const auto &label = layer == TagLayer::kGold ? sentence.gold_class : sentence.weak_class;
    if (!label) throw DataError("headline without a class label");
    decisions.push_back({std::move(features[0]), model.LabelIndex(*label)});
    return decisions;
  }
  const auto &tags = layer == TagLayer::kGold ? sentence.gold_tags : sentence.weak_tags;
  if (!tags) throw DataError("sentence without the required tag layer");
  if (tags->size() != features.size()) throw DataError("tag layer length mismatch");
  for (size_t i = 0; i < features.size(); ++i) {
    decisions.push_back({std::move(features[i]), model.LabelIndex((*tags)[i])});
  }
  return decisions;
}

TrainSchedule TrainSchedule::ForTask(Task task) {
  TrainSchedule schedule;
  schedule.learning_rate = task == Task::kTopic ? 0.1 : 0.05;
  return schedule;
}

void TrainSchedule::Validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning rate must be positive");
  if (clean_weight < 0 || noisy_weight < 0) {
    throw std::invalid_argument("loss weights must be non-negative");
  }
}

double HeadlineF1(Task task, const Metrics &metrics) {
  return task == Task::kNer ? metrics.micro.f1 : metrics.macro.f1;
}

Predictions Predict(const Model &model, const EmbeddingTable &embeddings,
                    const Dataset &dataset) {
  Predictions out;
  for (const Sentence &sentence : dataset.sentences) {
    std::vector<std::string> labels;
    for (const auto &p : PredictDistributions(model, embeddings, sentence)) {
      size_t best = static_cast<size_t>(std::max_element(p.begin(), p.end()) - p.begin());
      labels.push_back(model.labels[best]);
    }
    if (model.task == Task::kNer) {
      out.tags.push_back(RepairBio2(std::move(labels)));
    } else {
      out.classes.push_back(std::move(labels.front()));
    }
  }
  return out;
}

Metrics Evaluate(const Model &model, const EmbeddingTable &embeddings, const Dataset &gold) {
  Predictions predictions = Predict(model, embeddings, gold);
  if (model.task == Task::kNer) return SpanF1(gold, predictions.tags);
  std::vector<std::string> gold_classes;
  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    if (!gold.sentences[i].gold_class) {
      throw DataError("sentence " + std::to_string(i) + " has no gold class");
    }
    gold_classes.push_back(*gold.sentences[i].gold_class);
  }
  return ClassificationMetrics(gold_classes, predictions.classes, model.labels);
}

TrainResult Train(const Model &initial, const EmbeddingTable &embeddings, const Dataset &clean,
                  const Dataset &noisy, const ConfusionMatrix *channel,
                  const TrainSchedule &schedule, const Dataset &dev) {
  schedule.Validate();
  if (clean.empty()) throw DataError("training needs at least one clean sentence");
  if (dev.empty()) throw DataError("training needs a non-empty development set");
  if (embeddings.dim() != initial.embedding_dim) {
    throw DataError("embedding dimension does not match the model");
  }
  std::optional<ConfusionMatrix> storage;
  channel = CheckChannel(initial, channel, storage);

  std::vector<std::vector<Decision>> clean_decisions, noisy_decisions;
  for (const Sentence &s : clean.sentences) {
    clean_decisions.push_back(MakeDecisions(initial, embeddings, s, TagLayer::kGold));
  }
  for (const Sentence &s : noisy.sentences) {
    if (initial.task == Task::kTopic && !s.weak_class) continue;
    noisy_decisions.push_back(MakeDecisions(initial, embeddings, s, TagLayer::kWeak));
  }

  Rng subsample_rng(DeriveSeed({schedule.seed, 1}));
  Rng shuffle_rng(DeriveSeed({schedule.seed, 2}));

  TrainResult result;
  result.model = initial;
  Model model = initial;
  double best_f1 = -1;

  struct Item {
    const std::vector<Decision> *decisions;
    bool noisy;
  };
  for (size_t epoch = 1; epoch <= schedule.epochs; ++epoch) {
    std::vector<Item> items;
    for (const auto &d : clean_decisions) items.push_back({&d, false});
    size_t noisy_count = noisy_decisions.size();
    if (schedule.subsample_noisy) noisy_count = std::min(clean_decisions.size(), noisy_count);
    // Partial Fisher-Yates draw of the noisy subset.
    std::vector<size_t> pool(noisy_decisions.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (size_t i = 0; i < noisy_count; ++i) {
      size_t j = i + subsample_rng.UniformIndex(pool.size() - i);
      std::swap(pool[i], pool[j]);
      items.push_back({&noisy_decisions[pool[i]], true});
    }

    const bool full_batch = schedule.batch_size == 0 || schedule.batch_size >= items.size();
    if (!full_batch) {
      for (size_t i = 0; i + 1 < items.size(); ++i) {
        size_t j = i + shuffle_rng.UniformIndex(items.size() - i);
        std::swap(items[i], items[j]);
      }
    }
    const size_t step = full_batch ? items.size() : schedule.batch_size;

    EpochRecord record;
    record.epoch = epoch;
    record.clean_sentences = clean_decisions.size();
    record.noisy_sentences = noisy_count;
    double epoch_loss = 0;
    size_t epoch_decisions = 0;
    for (size_t begin = 0; begin < items.size(); begin += step) {
      const size_t end = std::min(items.size(), begin + step);
      Gradients grads = ZeroGradients(model);
      double batch_loss = 0;
      size_t batch_decisions = 0;
      for (size_t i = begin; i < end; ++i) {
        const ConfusionMatrix *ch = items[i].noisy ? channel : nullptr;
        const double w = items[i].noisy ? schedule.noisy_weight : schedule.clean_weight;
        for (const Decision &d : *items[i].decisions) {
          batch_loss += AccumulateDecision(model, d, ch, w, grads);
        }
        batch_decisions += items[i].decisions->size();
      }
      if (batch_decisions == 0) continue;
      const double inv = 1.0 / static_cast<double>(batch_decisions);
      for (size_t p = 0; p < model.weights.size(); ++p) {
        model.weights[p] -= schedule.learning_rate * (grads.weights[p] * inv);
      }
      for (size_t p = 0; p < model.bias.size(); ++p) {
        model.bias[p] -= schedule.learning_rate * (grads.bias[p] * inv);
      }
      epoch_loss += batch_loss;
      epoch_decisions += batch_decisions;
      ++record.steps;
    }
    record.train_loss = epoch_decisions ? epoch_loss / static_cast<double>(epoch_decisions) : 0;

    Metrics dev_metrics = Evaluate(model, embeddings, dev);
    record.dev_f1 = HeadlineF1(model.task, dev_metrics);
    if (record.dev_f1 > best_f1) {
      best_f1 = record.dev_f1;
      result.model = model;
      result.best_epoch = epoch;
      result.best_dev_metrics = std::move(dev_metrics);
    }
    if (schedule.record_parameters) {
      record.parameters = model.weights;
      record.parameters.insert(record.parameters.end(), model.bias.begin(), model.bias.end());
    }
    result.history.push_back(std::move(record));
  }
  return result;
}

std::string WriteCheckpoint(const Model &model) {
  std::string out = "weaksup-model 1\n";
  out += "task " + std::string(TaskName(model.task)) + '\n';
  out += "embedding_dim " + std::to_string(model.embedding_dim) + '\n';
  out += "labels " + std::to_string(model.num_labels()) + '\n';
  for (const std::string &label : model.labels) out += label + '\n';
  out += "weights " + std::to_string(model.num_labels()) + ' ' +
         std::to_string(model.feature_dim()) + '\n';
  for (size_t k = 0; k < model.num_labels(); ++k) {
    for (size_t f = 0; f < model.feature_dim(); ++f) {
      if (f > 0) out += ' ';
      out += FormatDouble(model.weights[k * model.feature_dim() + f]);
    }
    out += '\n';
  }
  out += "bias\n";
  for (size_t k = 0; k < model.num_labels(); ++k) {
    if (k > 0) out += ' ';
    out += FormatDouble(model.bias[k]);
  }
  out += '\n';
  return out;
}

Model ParseCheckpoint(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  size_t n = 0;
  auto next = [&]() -> const std::string & {
    if (n >= lines.size()) throw ParseError(n + 1, "truncated checkpoint");
    return lines[n++];
  };
  auto keyed = [&](std::string_view key) {
    std::vector<std::string> fields = SplitFields(next(), ' ');
    if (fields.empty() || fields[0] != key) {
      throw ParseError(n, "expected '" + std::string(key) + "'");
    }
    fields.erase(fields.begin());
    return fields;
  };
  auto number = [&](const std::string &field) {
    try {
      return ParseDouble(field);
    } catch (const DataError &e) {
      throw ParseError(n, e.what());
    }
  };
  auto count = [&](const std::string &field) {
    try {
      return static_cast<size_t>(ParseInt(field));
    } catch (const DataError &e) {
      throw ParseError(n, e.what());
    }
  };

  std::vector<std::string> version = keyed("weaksup-model");
  if (version.size() != 1 || version[0] != "1") {
    throw ParseError(1, "unsupported checkpoint version");
  }
  Model model;
  std::vector<std::string> task = keyed("task");
  if (task.size() != 1) throw ParseError(n, "expected task name");
  try {
    model.task = ParseTask(task[0]);
  } catch (const std::invalid_argument &e) {
    throw ParseError(n, e.what());
  }
  std::vector<std::string> dim = keyed("embedding_dim");
  if (dim.size() != 1) throw ParseError(n, "expected embedding dimension");
  model.embedding_dim = count(dim[0]);
  std::vector<std::string> num_labels = keyed("labels");
  if (num_labels.size() != 1) throw ParseError(n, "expected label count");
  const size_t k = count(num_labels[0]);
  for (size_t i = 0; i < k; ++i) model.labels.push_back(next());
  std::vector<std::string> shape = keyed("weights");
  if (shape.size() != 2 || count(shape[0]) != k || count(shape[1]) != model.feature_dim()) {
    throw ParseError(n, "weight shape does not match labels and embedding dimension");
  }
  for (size_t row = 0; row < k; ++row) {
    std::vector<std::string> fields = SplitFields(next(), ' ');
    if (fields.size() != model.feature_dim()) throw ParseError(n, "wrong weight row length");
    for (const std::string &f : fields) model.weights.push_back(number(f));
  }
  keyed("bias");
  std::vector<std::string> bias = SplitFields(next(), ' ');
  if (bias.size() != k) throw ParseError(n, "wrong bias length");
  for (const std::string &f : bias) model.bias.push_back(number(f));
  return model;
}

}  // namespace weaksup
