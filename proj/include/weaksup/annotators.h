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

// Distant-supervision rule engines: gazetteer matching, DATE keyword rules,
// tag-layer merging and dictionary majority vote for topic headlines.

#ifndef WEAKSUP_ANNOTATORS_H_
#define WEAKSUP_ANNOTATORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weaksup/corpus.h"
#include "weaksup/eval.h"
#include "weaksup/lexicon.h"
#include "weaksup/random.h"

namespace weaksup {

using TagSequence = std::vector<std::string>;

struct DateRuleConfig {
  // All word lists are compared after NFC + lowercasing.
  std::set<std::string> keywords;
  std::set<std::string> month_names;
  std::set<std::string> connectors;
  std::set<std::string> conjunctions;
  size_t max_gap = 2;
  // Month names also open a span, which catches keyword-less periods such
  // as "between July 2019 and March 2020".
  bool month_opens_span = true;

  static DateRuleConfig Hausa();
  static DateRuleConfig Yoruba();
  // Hausa() for "ha", Yoruba() for "yo", an empty config otherwise.
  static DateRuleConfig ForLanguage(std::string_view language);

  void Validate() const;
};

struct LabelPriority {
  std::vector<std::string> order{"PER", "LOC", "ORG", "DATE"};

  // Position in `order`; unknown types rank after every listed type.
  size_t Rank(const std::string &type) const;
};

// Tags the tokens matching entries of one gazetteer. Candidate matches are
// accepted longest first, leftmost first among equal lengths, skipping any
// that overlap an accepted match.
TagSequence AnnotateWithGazetteer(const Sentence &sentence, const Gazetteer &gazetteer);

// One layer per gazetteer, merged with MergeTagLayers.
TagSequence AnnotateNerGazetteer(const Sentence &sentence,
                                 const std::vector<Gazetteer> &gazetteers,
                                 const LabelPriority &priority = {});

// DATE spans: a keyword (or month name) opens a span that absorbs following
// digits and month names; a digit up to max_gap tokens after a span joins
// it; spans separated by at most max_gap connector or conjunction tokens
// merge, connectors included.
TagSequence AnnotateNerDates(const Sentence &sentence, const DateRuleConfig &config);

// Resolves overlaps between layers token by token: the token goes to the
// longest covering span, ties broken by priority, then by earlier start,
// then by earlier layer. Partially overridden spans are re-headed with B-.
TagSequence MergeTagLayers(const std::vector<TagSequence> &layers,
                           const LabelPriority &priority = {});

struct TopicRuleConfig {
  std::vector<ClassDictionary> dictionaries;
  std::optional<StageOneKeywords> stage_one;
  uint64_t tie_seed = 0;
  bool abstain_on_empty = true;

  void Validate() const;
};

// Lowercased 1- and 2-grams of a headline.
std::set<std::string> HeadlineNgrams(const Sentence &sentence);

// Stage-one keywords first, then the class with the largest dictionary
// intersection. Ties are drawn uniformly with `rng`. Returns nullopt to
// abstain.
std::optional<std::string> AnnotateTopic(const Sentence &sentence,
                                         const TopicRuleConfig &config, Rng &rng);

struct NerRuleConfig {
  std::vector<Gazetteer> gazetteers;
  std::optional<DateRuleConfig> dates;
  LabelPriority priority;
};

struct AnnotationResult {
  Dataset dataset;
  // Topic sentences without a weak class.
  size_t abstained = 0;
  std::vector<std::string> warnings;
};

// Populates weak layers on every sentence; gold layers are untouched. Topic
// tie-breaking uses an independent stream per sentence derived from
// (tie_seed, sentence index).
AnnotationResult ApplyRules(const Dataset &dataset, const NerRuleConfig &config);
AnnotationResult ApplyRules(const Dataset &dataset, const TopicRuleConfig &config);

}  // namespace weaksup

#endif  // WEAKSUP_ANNOTATORS_H_
