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

// INI rule configuration for the annotators.
//
//   [rules]            language = ha
//   [date]             language = ha         (preset word lists)
//                      keywords = ranar watan shekarar
//                      month_names = ... connectors = ga , ... conjunctions = da zuwa
//                      max_gap = 2           month_opens_span = true
//   [gazetteer.LOC]    path = loc.txt        min_token_length = 4
//                      lowercase = false     fold_diacritics = false
//   [priority]         order = PER,LOC,ORG,DATE
//   [topic]            dict_dir = dicts      classes = Health,Politics
//                      stage_one = stage1.tsv  abstain_on_empty = true  tie_seed = 0
//
// Word lists in [date] are whitespace-separated (a comma can be a
// connector); label lists accept commas or whitespace. Relative paths are
// resolved against the directory of the config file.

#ifndef WEAKSUP_RULE_CONFIG_H_
#define WEAKSUP_RULE_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weaksup/annotators.h"

namespace weaksup {

// Flat view of an INI file: section -> key -> value, in file order.
class IniFile {
 public:
  static IniFile Parse(std::string_view text);
  static IniFile Load(const std::filesystem::path &path);

  bool HasSection(const std::string &section) const;
  std::optional<std::string> Get(const std::string &section, const std::string &key) const;
  std::string GetOr(const std::string &section, const std::string &key,
                    const std::string &fallback) const;
  bool GetBool(const std::string &section, const std::string &key, bool fallback) const;
  // Sections whose name starts with `prefix`, with the prefix removed.
  std::vector<std::string> SectionsWithPrefix(const std::string &prefix) const;

 private:
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> sections_;
};

std::vector<std::string> SplitList(std::string_view value, bool commas_separate);

struct RuleConfig {
  std::string language;
  NerRuleConfig ner;
  std::optional<TopicRuleConfig> topic;
  std::vector<std::string> warnings;
};

RuleConfig LoadRuleConfig(const std::filesystem::path &path, Task task);
RuleConfig ParseRuleConfig(const IniFile &ini, const std::filesystem::path &base_dir, Task task);

}  // namespace weaksup

#endif  // WEAKSUP_RULE_CONFIG_H_
