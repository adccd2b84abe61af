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

#include "weaksup/lexicon.h"

#include <algorithm>

#include "weaksup/corpus.h"
#include "weaksup/errors.h"
#include "weaksup/io.h"

namespace weaksup {
namespace {

bool IsContentLine(const std::string &trimmed) {
  return !trimmed.empty() && trimmed.front() != '#';
}

}  // namespace

std::string Gazetteer::Key(const std::vector<std::string> &tokens) const {
  std::vector<std::string> normalized;
  normalized.reserve(tokens.size());
  for (const std::string &token : tokens) normalized.push_back(Normalize(token, normalization));
  return Join(normalized, " ");
}

bool Gazetteer::Contains(const std::vector<std::string> &tokens) const {
  return entries.count(Key(tokens)) > 0;
}

GazetteerLoad ParseGazetteer(std::string_view text, std::string label,
                             size_t min_token_length, NormalizeOptions normalization) {
  GazetteerLoad load;
  load.gazetteer.label = std::move(label);
  load.gazetteer.min_token_length = min_token_length;
  load.gazetteer.normalization = normalization;
  for (const std::string &line : SplitLines(text)) {
    std::string trimmed = Trim(line);
    if (!IsContentLine(trimmed)) continue;
    std::vector<std::string> tokens = TermTokens(trimmed, normalization);
    bool too_short = std::any_of(tokens.begin(), tokens.end(), [&](const std::string &t) {
      return CodePointLength(t) < min_token_length;
    });
    if (tokens.empty() || too_short) {
      ++load.dropped;
      continue;
    }
    load.gazetteer.max_entry_tokens = std::max(load.gazetteer.max_entry_tokens, tokens.size());
    load.gazetteer.entries.insert(Join(tokens, " "));
  }
  load.kept = load.gazetteer.entries.size();
  if (load.kept == 0) {
    load.warnings.push_back("gazetteer " + load.gazetteer.label + " is empty");
  }
  return load;
}

GazetteerLoad LoadGazetteer(const std::filesystem::path &path, std::string label,
                            size_t min_token_length, NormalizeOptions normalization) {
  GazetteerLoad load =
      ParseGazetteer(ReadFile(path), std::move(label), min_token_length, normalization);
  for (std::string &w : load.warnings) w = path.string() + ": " + w;
  return load;
}

size_t DefaultMinTokenLength(std::string_view language, std::string_view label) {
  if (language == "yo") {
    if (label == "LOC" || label == "PER") return 3;
    if (label == "ORG") return 2;
  }
  if (language == "ha" && (label == "LOC" || label == "ORG" || label == "PER")) return 4;
  return 1;
}

std::vector<std::string> TermTokens(std::string_view text, const NormalizeOptions &options) {
  std::vector<std::string> out;
  for (Token &token : Tokenize(text)) out.push_back(Normalize(token.surface, options));
  return out;
}

ClassDictionary ParseClassDictionary(std::string_view text, std::string class_label,
                                     std::vector<std::string> *warnings) {
  ClassDictionary dictionary;
  dictionary.class_label = std::move(class_label);
  std::vector<std::string> lines = SplitLines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    std::string trimmed = Trim(lines[n]);
    if (!IsContentLine(trimmed)) continue;
    std::vector<std::string> tokens = TermTokens(trimmed);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) {
      if (warnings) {
        warnings->push_back(dictionary.class_label + " line " + std::to_string(n + 1) +
                            ": term '" + trimmed + "' has more than 2 tokens, skipped");
      }
      continue;
    }
    dictionary.terms.insert(Join(tokens, " "));
  }
  return dictionary;
}

StageOneKeywords ParseStageOneKeywords(std::string_view text,
                                       const std::vector<std::string> &classes) {
  StageOneKeywords keywords;
  std::vector<std::string> lines = SplitLines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    std::string trimmed = Trim(lines[n]);
    if (!IsContentLine(trimmed)) continue;
    std::vector<std::string> fields = SplitFields(trimmed, '\t');
    if (fields.size() != 2) throw ParseError(n + 1, "expected keyword<TAB>class");
    std::string keyword = Join(TermTokens(fields[0]), " ");
    std::string label = Normalize(Trim(fields[1]));
    if (keyword.empty() || label.empty()) throw ParseError(n + 1, "empty keyword or class");
    if (!classes.empty() && std::find(classes.begin(), classes.end(), label) == classes.end()) {
      throw ParseError(n + 1, "class '" + label + "' is not a task label");
    }
    keywords.entries.emplace_back(std::move(keyword), std::move(label));
  }
  return keywords;
}

DictionaryLoad LoadClassDictionaries(const std::filesystem::path &dir,
                                     const std::vector<std::string> &classes,
                                     const std::optional<std::filesystem::path> &stage_one) {
  DictionaryLoad load;
  for (const std::string &label : classes) {
    std::filesystem::path file = dir / (label + ".txt");
    if (!std::filesystem::exists(file)) {
      throw IoError("missing dictionary for class '" + label + "': " + file.string());
    }
    load.dictionaries.push_back(ParseClassDictionary(ReadFile(file), label, &load.warnings));
  }
  if (stage_one) {
    try {
      load.stage_one = ParseStageOneKeywords(ReadFile(*stage_one), classes);
    } catch (const ParseError &e) {
      throw DataError(stage_one->string() + ": " + e.what());
    }
  }
  return load;
}

}  // namespace weaksup
