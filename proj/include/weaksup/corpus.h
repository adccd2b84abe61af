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

// Corpus data model: tokenized sentences with gold and weak label layers,
// CoNLL / topic TSV serialization, splitting and downsampling.

#ifndef WEAKSUP_CORPUS_H_
#define WEAKSUP_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace weaksup {

enum class Task { kNer, kTopic };

std::string_view TaskName(Task task);
// Accepts "ner" or "topic". Throws std::invalid_argument otherwise.
Task ParseTask(std::string_view name);

// Weak class written for topic headlines on which the rules abstained.
inline constexpr std::string_view kAbstain = "ABSTAIN";
inline constexpr std::string_view kOutside = "O";

struct Token {
  std::string surface;
  size_t index = 0;

  bool operator==(const Token &) const = default;
};

// A BIO2 tag split into its prefix and entity type.
struct BioTag {
  enum class Prefix { kOutside, kBegin, kInside };
  Prefix prefix = Prefix::kOutside;
  std::string type;

  bool operator==(const BioTag &) const = default;
};

// Parses "O", "B-X" or "I-X" (X non-empty). Returns nullopt for anything
// else.
std::optional<BioTag> ParseBioTag(std::string_view tag);

// Strict BIO2: every I-X continues a B-X or I-X of the same type.
bool IsStrictBio2(const std::vector<std::string> &tags);

// Rewrites orphan I-X tags to B-X.
std::vector<std::string> RepairBio2(std::vector<std::string> tags);

struct Sentence {
  std::vector<Token> tokens;
  std::optional<std::vector<std::string>> gold_tags;
  std::optional<std::vector<std::string>> weak_tags;
  std::optional<std::string> gold_class;
  std::optional<std::string> weak_class;
  // Set by the topic annotator when no rule fired.
  bool abstained = false;

  size_t size() const { return tokens.size(); }
  std::vector<std::string> Surfaces() const;

  bool operator==(const Sentence &) const = default;
};

Sentence MakeSentence(const std::vector<std::string> &surfaces);

struct Dataset {
  Task task = Task::kNer;
  std::vector<Sentence> sentences;
  // Entity types (NER) or classes (topic), unique.
  std::vector<std::string> label_set;
  std::string language;

  size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
  size_t TokenCount() const;

  bool operator==(const Dataset &) const = default;
};

// Output label inventory of a token tagger for the given entity types:
// "O" followed by B-X, I-X for each type in order.
std::vector<std::string> NerTagLabels(const std::vector<std::string> &entity_types);

// Whitespace split, punctuation detached from token edges, NFC.
std::vector<Token> Tokenize(std::string_view raw);

// CoNLL reader. Each non-blank line is "token", "token<TAB>tag" or
// "token<TAB>gold<TAB>weak"; blank lines separate sentences. All lines of a
// sentence must have the same column count. The label set is the sorted set
// of entity types seen in either tag column.
Dataset ParseConll(std::string_view text, std::string language = {});

// Writes every populated layer (token, gold, weak). Throws std::logic_error
// if a sentence has weak tags but no gold tags.
std::string WriteConll(const Dataset &dataset);

enum class TagLayer { kGold, kWeak };

// Two-column "token<TAB>tag" output of one layer. Sentences missing the
// layer are written as all-O.
std::string WriteConllLayer(const Dataset &dataset, TagLayer layer);

// "class<TAB>headline" per line; headline tokenized with Tokenize. Blank
// lines are skipped.
Dataset ParseTopicTsv(std::string_view text, std::string language = {});

// Gold class (or the weak class, ABSTAIN for abstentions) and the
// space-joined tokens.
std::string WriteTopicTsv(const Dataset &dataset, TagLayer layer = TagLayer::kGold);

Dataset ReadDataset(const std::string &path, Task task, std::string language = {});

enum class SplitUnit { kSentence, kToken };

struct SplitSpec {
  std::array<double, 3> ratios{0.7, 0.1, 0.2};
  SplitUnit unit = SplitUnit::kSentence;
  // Partitions are contiguous in corpus order; the seed is carried for
  // provenance only.
  uint64_t seed = 0;
};

struct SplitResult {
  Dataset train;
  Dataset dev;
  Dataset test;
};

// Contiguous (train, dev, test) partition in corpus order. SENTENCE unit
// rounds cumulative sentence quotas; TOKEN unit cuts at the first sentence
// end whose cumulative token count reaches the cumulative quota.
SplitResult SplitDataset(const Dataset &dataset, const SplitSpec &spec);

// Seeded subset of exactly target_size sentences in original order. The
// subset for size n is a prefix of one seeded permutation, so subsets for
// increasing sizes are nested.
Dataset Downsample(const Dataset &dataset, size_t target_size, uint64_t seed);

// Sorted indices selected by Downsample.
std::vector<size_t> DownsampleIndices(size_t dataset_size, size_t target_size, uint64_t seed);

// Dev set size matching a downsized training set:
// max(round(dev * train_subset / train_full), min(10, dev)), capped at dev.
size_t DevDownsizeTarget(size_t dev_size, size_t train_subset, size_t train_full);

enum class ProjectionMode { kIntersect, kUnion };

// INTERSECT: entity tags whose type is outside target become O and topic
// sentences whose class is outside target are dropped. UNION: label set
// becomes the union, labels unchanged.
Dataset ProjectLabels(const Dataset &dataset, const std::vector<std::string> &target,
                      ProjectionMode mode);

// Entity types (NER) or classes (topic) used by any layer, sorted.
std::vector<std::string> CollectLabels(const Dataset &dataset);

}  // namespace weaksup

#endif  // WEAKSUP_CORPUS_H_
