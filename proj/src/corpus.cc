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

#include "weaksup/corpus.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "weaksup/errors.h"
#include "weaksup/io.h"
#include "weaksup/random.h"
#include "weaksup/text.h"

namespace weaksup {

std::string_view TaskName(Task task) { return task == Task::kNer ? "ner" : "topic"; }

Task ParseTask(std::string_view name) {
  if (name == "ner") return Task::kNer;
  if (name == "topic") return Task::kTopic;
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

std::optional<BioTag> ParseBioTag(std::string_view tag) {
  if (tag == kOutside) return BioTag{};
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  BioTag parsed;
  if (tag[0] == 'B') {
    parsed.prefix = BioTag::Prefix::kBegin;
  } else if (tag[0] == 'I') {
    parsed.prefix = BioTag::Prefix::kInside;
  } else {
    return std::nullopt;
  }
  parsed.type = std::string(tag.substr(2));
  if (parsed.type.find_first_of(" \t\n") != std::string::npos) return std::nullopt;
  return parsed;
}

bool IsStrictBio2(const std::vector<std::string> &tags) {
  std::optional<std::string> open;
  for (const std::string &tag : tags) {
    auto parsed = ParseBioTag(tag);
    if (!parsed) return false;
    switch (parsed->prefix) {
      case BioTag::Prefix::kOutside:
        open.reset();
        break;
      case BioTag::Prefix::kBegin:
        open = parsed->type;
        break;
      case BioTag::Prefix::kInside:
        if (!open || *open != parsed->type) return false;
        break;
    }
  }
  return true;
}

std::vector<std::string> RepairBio2(std::vector<std::string> tags) {
  std::optional<std::string> open;
  for (std::string &tag : tags) {
    auto parsed = ParseBioTag(tag);
    if (!parsed || parsed->prefix == BioTag::Prefix::kOutside) {
      open.reset();
      continue;
    }
    if (parsed->prefix == BioTag::Prefix::kInside && (!open || *open != parsed->type)) {
      tag = "B-" + parsed->type;
    }
    open = parsed->type;
  }
  return tags;
}

std::vector<std::string> Sentence::Surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &token : tokens) out.push_back(token.surface);
  return out;
}

Sentence MakeSentence(const std::vector<std::string> &surfaces) {
  Sentence sentence;
  for (size_t i = 0; i < surfaces.size(); ++i) sentence.tokens.push_back({surfaces[i], i});
  return sentence;
}

size_t Dataset::TokenCount() const {
  size_t total = 0;
  for (const Sentence &s : sentences) total += s.size();
  return total;
}

std::vector<std::string> NerTagLabels(const std::vector<std::string> &entity_types) {
  std::vector<std::string> labels{std::string(kOutside)};
  for (const std::string &type : entity_types) {
    labels.push_back("B-" + type);
    labels.push_back("I-" + type);
  }
  return labels;
}

std::vector<Token> Tokenize(std::string_view raw) {
  std::vector<Token> tokens;
  for (const std::string &chunk : SplitWhitespace(Normalize(raw))) {
    for (std::string &piece : SplitPunctuation(chunk)) {
      tokens.push_back({std::move(piece), tokens.size()});
    }
  }
  return tokens;
}

std::vector<std::string> CollectLabels(const Dataset &dataset) {
  std::set<std::string> labels;
  for (const Sentence &s : dataset.sentences) {
    for (const auto *layer : {&s.gold_tags, &s.weak_tags}) {
      if (!layer->has_value()) continue;
      for (const std::string &tag : **layer) {
        auto parsed = ParseBioTag(tag);
        if (parsed && parsed->prefix != BioTag::Prefix::kOutside) labels.insert(parsed->type);
      }
    }
    if (s.gold_class) labels.insert(*s.gold_class);
    if (s.weak_class) labels.insert(*s.weak_class);
  }
  return {labels.begin(), labels.end()};
}

Dataset ParseConll(std::string_view text, std::string language) {
  Dataset dataset;
  dataset.task = Task::kNer;
  dataset.language = std::move(language);

  Sentence current;
  std::vector<std::string> gold, weak;
  size_t columns = 0;
  auto flush = [&]() {
    if (current.tokens.empty()) return;
    if (columns >= 2) current.gold_tags = std::move(gold);
    if (columns == 3) current.weak_tags = std::move(weak);
    dataset.sentences.push_back(std::move(current));
    current = Sentence{};
    gold.clear();
    weak.clear();
    columns = 0;
  };

  std::vector<std::string> lines = SplitLines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    if (Trim(line).empty()) {
      flush();
      continue;
    }
    std::vector<std::string> fields = SplitFields(line, '\t');
    if (fields.size() > 3) {
      throw ParseError(n + 1, "expected token<TAB>tag, got " +
                                  std::to_string(fields.size()) + " fields");
    }
    if (columns != 0 && fields.size() != columns) {
      throw ParseError(n + 1, "column count changes within a sentence");
    }
    columns = fields.size();
    if (fields[0].empty() || SplitWhitespace(fields[0]).size() != 1) {
      throw ParseError(n + 1, "empty token or token containing whitespace");
    }
    for (size_t c = 1; c < fields.size(); ++c) {
      if (!ParseBioTag(fields[c])) {
        throw ParseError(n + 1, "invalid BIO2 tag '" + fields[c] + "'");
      }
    }
    current.tokens.push_back({Normalize(fields[0]), current.tokens.size()});
    if (columns >= 2) gold.push_back(fields[1]);
    if (columns == 3) weak.push_back(fields[2]);
  }
  flush();
  dataset.label_set = CollectLabels(dataset);
  return dataset;
}

std::string WriteConll(const Dataset &dataset) {
  std::string out;
  for (size_t i = 0; i < dataset.sentences.size(); ++i) {
    const Sentence &s = dataset.sentences[i];
    if (s.weak_tags && !s.gold_tags) {
      throw std::logic_error("WriteConll: sentence " + std::to_string(i) +
                             " has weak tags but no gold tags");
    }
    if (i > 0) out += '\n';
    for (size_t t = 0; t < s.tokens.size(); ++t) {
      out += s.tokens[t].surface;
      if (s.gold_tags) out += '\t' + (*s.gold_tags)[t];
      if (s.weak_tags) out += '\t' + (*s.weak_tags)[t];
      out += '\n';
    }
  }
  return out;
}

std::string WriteConllLayer(const Dataset &dataset, TagLayer layer) {
  std::string out;
  for (size_t i = 0; i < dataset.sentences.size(); ++i) {
    const Sentence &s = dataset.sentences[i];
    const auto &tags = layer == TagLayer::kGold ? s.gold_tags : s.weak_tags;
    if (i > 0) out += '\n';
    for (size_t t = 0; t < s.tokens.size(); ++t) {
      out += s.tokens[t].surface;
      out += '\t';
      out += tags ? (*tags)[t] : std::string(kOutside);
      out += '\n';
    }
  }
  return out;
}

Dataset ParseTopicTsv(std::string_view text, std::string language) {
  Dataset dataset;
  dataset.task = Task::kTopic;
  dataset.language = std::move(language);
  std::vector<std::string> lines = SplitLines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    if (Trim(lines[n]).empty()) continue;
    size_t tab = lines[n].find('\t');
    if (tab == std::string::npos) throw ParseError(n + 1, "missing tab after class label");
    std::string label = Trim(std::string_view(lines[n]).substr(0, tab));
    if (label.empty()) throw ParseError(n + 1, "empty class label");
    Sentence sentence;
    sentence.tokens = Tokenize(std::string_view(lines[n]).substr(tab + 1));
    if (sentence.tokens.empty()) throw ParseError(n + 1, "empty headline");
    sentence.gold_class = Normalize(label);
    dataset.sentences.push_back(std::move(sentence));
  }
  dataset.label_set = CollectLabels(dataset);
  return dataset;
}

std::string WriteTopicTsv(const Dataset &dataset, TagLayer layer) {
  std::string out;
  for (const Sentence &s : dataset.sentences) {
    const auto &label = layer == TagLayer::kGold ? s.gold_class : s.weak_class;
    if (label) {
      out += *label;
    } else if (layer == TagLayer::kWeak) {
      out += kAbstain;
    } else {
      throw std::logic_error("WriteTopicTsv: sentence without gold class");
    }
    out += '\t';
    out += Join(s.Surfaces(), " ");
    out += '\n';
  }
  return out;
}

Dataset ReadDataset(const std::string &path, Task task, std::string language) {
  std::string text = ReadFile(path);
  try {
    return task == Task::kNer ? ParseConll(text, std::move(language))
                              : ParseTopicTsv(text, std::move(language));
  } catch (const ParseError &e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

Dataset Slice(const Dataset &dataset, size_t begin, size_t end) {
  Dataset out;
  out.task = dataset.task;
  out.label_set = dataset.label_set;
  out.language = dataset.language;
  out.sentences.assign(dataset.sentences.begin() + static_cast<std::ptrdiff_t>(begin),
                       dataset.sentences.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

void ValidateRatios(const std::array<double, 3> &ratios) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("split ratio outside [0,1]");
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("split ratios must sum to 1");
}

}  // namespace

SplitResult SplitDataset(const Dataset &dataset, const SplitSpec &spec) {
  ValidateRatios(spec.ratios);
  if (dataset.empty()) throw DataError("cannot split an empty dataset");
  const size_t n = dataset.size();
  const double first = spec.ratios[0];
  const double second = spec.ratios[0] + spec.ratios[1];

  size_t cut1 = 0, cut2 = 0;
  if (spec.unit == SplitUnit::kSentence) {
    cut1 = std::min(n, static_cast<size_t>(std::llround(first * static_cast<double>(n))));
    cut2 = std::min(n, static_cast<size_t>(std::llround(second * static_cast<double>(n))));
  } else {
    const double total = static_cast<double>(dataset.TokenCount());
    // Smallest k with cumulative tokens of the first k sentences >= quota.
    auto boundary = [&](double quota) {
      size_t cumulative = 0;
      for (size_t k = 0; k <= n; ++k) {
        if (static_cast<double>(cumulative) >= quota - 1e-9) return k;
        if (k < n) cumulative += dataset.sentences[k].size();
      }
      return n;
    };
    cut1 = boundary(first * total);
    cut2 = boundary(second * total);
  }
  cut2 = std::max(cut1, cut2);
  if (spec.ratios[2] == 0.0) cut2 = n;
  if (spec.ratios[1] == 0.0 && spec.ratios[2] == 0.0) cut1 = n;
  return {Slice(dataset, 0, cut1), Slice(dataset, cut1, cut2), Slice(dataset, cut2, n)};
}

std::vector<size_t> DownsampleIndices(size_t dataset_size, size_t target_size, uint64_t seed) {
  if (target_size < 1 || target_size > dataset_size) {
    throw std::out_of_range("downsample target " + std::to_string(target_size) +
                            " outside [1, " + std::to_string(dataset_size) + "]");
  }
  std::vector<size_t> order(dataset_size);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Forward Fisher-Yates: the first k positions are final after k steps, so
  // every prefix is a uniform sample and prefixes are nested.
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    size_t j = i + rng.UniformIndex(order.size() - i);
    std::swap(order[i], order[j]);
  }
  order.resize(target_size);
  std::sort(order.begin(), order.end());
  return order;
}

Dataset Downsample(const Dataset &dataset, size_t target_size, uint64_t seed) {
  std::vector<size_t> indices = DownsampleIndices(dataset.size(), target_size, seed);
  Dataset out = Slice(dataset, 0, 0);
  out.sentences.reserve(target_size);
  for (size_t index : indices) out.sentences.push_back(dataset.sentences[index]);
  return out;
}

size_t DevDownsizeTarget(size_t dev_size, size_t train_subset, size_t train_full) {
  if (train_full == 0) throw std::invalid_argument("empty full training set");
  const double scaled = static_cast<double>(dev_size) * static_cast<double>(train_subset) /
                        static_cast<double>(train_full);
  size_t target = std::max(static_cast<size_t>(std::llround(scaled)),
                           std::min<size_t>(10, dev_size));
  return std::min(target, dev_size);
}

Dataset ProjectLabels(const Dataset &dataset, const std::vector<std::string> &target,
                      ProjectionMode mode) {
  if (target.empty()) throw std::invalid_argument("empty target label set");
  Dataset out = Slice(dataset, 0, 0);
  auto in_target = [&](const std::string &label) {
    return std::find(target.begin(), target.end(), label) != target.end();
  };

  if (mode == ProjectionMode::kUnion) {
    out.sentences = dataset.sentences;
    for (const std::string &label : target) {
      if (std::find(out.label_set.begin(), out.label_set.end(), label) == out.label_set.end()) {
        out.label_set.push_back(label);
      }
    }
    return out;
  }

  out.label_set.clear();
  for (const std::string &label : dataset.label_set) {
    if (in_target(label)) out.label_set.push_back(label);
  }
  auto project_tags = [&](std::optional<std::vector<std::string>> &tags) {
    if (!tags) return;
    for (std::string &tag : *tags) {
      auto parsed = ParseBioTag(tag);
      if (parsed && parsed->prefix != BioTag::Prefix::kOutside && !in_target(parsed->type)) {
        tag = std::string(kOutside);
      }
    }
  };
  for (const Sentence &source : dataset.sentences) {
    Sentence s = source;
    if (dataset.task == Task::kTopic) {
      const auto &deciding = s.gold_class ? s.gold_class : s.weak_class;
      if (deciding && !in_target(*deciding)) continue;
      if (s.weak_class && !in_target(*s.weak_class)) {
        s.weak_class.reset();
        s.abstained = true;
      }
    } else {
      project_tags(s.gold_tags);
      project_tags(s.weak_tags);
    }
    out.sentences.push_back(std::move(s));
  }
  return out;
}

}  // namespace weaksup
