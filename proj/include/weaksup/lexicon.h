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

#ifndef WEAKSUP_LEXICON_H_
#define WEAKSUP_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weaksup/text.h"

namespace weaksup {

// Entity names of one type. Entries are stored as their normalized tokens
// joined by a single space.
struct Gazetteer {
  std::string label;
  std::set<std::string> entries;
  size_t min_token_length = 1;
  NormalizeOptions normalization;
  // Longest entry, in tokens.
  size_t max_entry_tokens = 0;

  std::string Key(const std::vector<std::string> &tokens) const;
  bool Contains(const std::vector<std::string> &tokens) const;

  bool operator==(const Gazetteer &) const = default;
};

struct GazetteerLoad {
  Gazetteer gazetteer;
  size_t kept = 0;
  size_t dropped = 0;
  std::vector<std::string> warnings;
};

// One entry per line, '#' starts a comment line. An entry is dropped when
// any of its tokens is shorter than min_token_length code points. NER
// gazetteers are case-preserving by default.
GazetteerLoad ParseGazetteer(std::string_view text, std::string label,
                             size_t min_token_length, NormalizeOptions normalization = {});
GazetteerLoad LoadGazetteer(const std::filesystem::path &path, std::string label,
                            size_t min_token_length, NormalizeOptions normalization = {});

// Per-(language, label) minimum entry token lengths: Yoruba LOC/PER 3,
// ORG 2; Hausa LOC/ORG/PER 4. Other combinations return 1.
size_t DefaultMinTokenLength(std::string_view language, std::string_view label);

// Topic dictionaries and stage-one keywords are lowercased.
inline constexpr NormalizeOptions kTopicNormalization{.lowercase = true};

struct ClassDictionary {
  std::string class_label;
  // Normalized 1- and 2-grams, tokens joined by a single space.
  std::set<std::string> terms;

  bool operator==(const ClassDictionary &) const = default;
};

// Keyword -> class pairs, checked in file order.
struct StageOneKeywords {
  std::vector<std::pair<std::string, std::string>> entries;

  bool operator==(const StageOneKeywords &) const = default;
};

struct DictionaryLoad {
  std::vector<ClassDictionary> dictionaries;
  std::optional<StageOneKeywords> stage_one;
  std::vector<std::string> warnings;
};

// Normalized tokens of a dictionary term or headline fragment.
std::vector<std::string> TermTokens(std::string_view text,
                                    const NormalizeOptions &options = kTopicNormalization);

ClassDictionary ParseClassDictionary(std::string_view text, std::string class_label,
                                     std::vector<std::string> *warnings);

// "keyword<TAB>class" per line. Classes must be in `classes` when it is
// non-empty.
StageOneKeywords ParseStageOneKeywords(std::string_view text,
                                       const std::vector<std::string> &classes);

// Reads <dir>/<class>.txt for every class, plus an optional stage-one file.
DictionaryLoad LoadClassDictionaries(const std::filesystem::path &dir,
                                     const std::vector<std::string> &classes,
                                     const std::optional<std::filesystem::path> &stage_one = {});

}  // namespace weaksup

#endif  // WEAKSUP_LEXICON_H_
