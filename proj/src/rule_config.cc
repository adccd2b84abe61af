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

#include "weaksup/rule_config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <sstream>

#include "weaksup/errors.h"
#include "weaksup/io.h"
#include "weaksup/text.h"

namespace weaksup {

IniFile IniFile::Parse(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw ParseError(e.line(), e.message());
  }
  IniFile ini;
  for (const auto &[name, section] : tree) {
    if (section.empty()) throw DataError("key '" + name + "' outside of a section");
    std::map<std::string, std::string> values;
    for (const auto &[key, value] : section) values[key] = value.data();
    ini.sections_.emplace_back(name, std::move(values));
  }
  return ini;
}

IniFile IniFile::Load(const std::filesystem::path &path) {
  try {
    return Parse(ReadFile(path));
  } catch (const ParseError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

bool IniFile::HasSection(const std::string &section) const {
  return std::any_of(sections_.begin(), sections_.end(),
                     [&](const auto &s) { return s.first == section; });
}

std::optional<std::string> IniFile::Get(const std::string &section,
                                        const std::string &key) const {
  for (const auto &[name, values] : sections_) {
    if (name != section) continue;
    auto it = values.find(key);
    if (it != values.end()) return it->second;
  }
  return std::nullopt;
}

std::string IniFile::GetOr(const std::string &section, const std::string &key,
                           const std::string &fallback) const {
  return Get(section, key).value_or(fallback);
}

bool IniFile::GetBool(const std::string &section, const std::string &key, bool fallback) const {
  auto value = Get(section, key);
  if (!value) return fallback;
  std::string v = Normalize(*value, {.lowercase = true});
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw DataError("[" + section + "] " + key + ": expected a boolean, got '" + *value + "'");
}

std::vector<std::string> IniFile::SectionsWithPrefix(const std::string &prefix) const {
  std::vector<std::string> out;
  for (const auto &section : sections_) {
    if (section.first.rfind(prefix, 0) == 0) out.push_back(section.first.substr(prefix.size()));
  }
  return out;
}

std::vector<std::string> SplitList(std::string_view value, bool commas_separate) {
  std::string text(value);
  if (commas_separate) std::replace(text.begin(), text.end(), ',', ' ');
  return SplitWhitespace(text);
}

namespace {

std::filesystem::path Resolve(const std::filesystem::path &base, const std::string &value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

size_t ParseCount(const std::string &section, const std::string &key, const std::string &v) {
  long long n = 0;
  try {
    n = ParseInt(v);
  } catch (const DataError &) {
    n = -1;
  }
  if (n < 0) throw DataError("[" + section + "] " + key + ": expected a count, got '" + v + "'");
  return static_cast<size_t>(n);
}

std::set<std::string> WordSet(const std::string &value) {
  std::set<std::string> out;
  for (const std::string &w : SplitList(value, false)) out.insert(Normalize(w, kTopicNormalization));
  return out;
}

}  // namespace

RuleConfig ParseRuleConfig(const IniFile &ini, const std::filesystem::path &base_dir,
                           Task task) {
  RuleConfig config;
  config.language = ini.GetOr("rules", "language", "");

  if (task == Task::kNer) {
    for (const std::string &label : ini.SectionsWithPrefix("gazetteer.")) {
      const std::string section = "gazetteer." + label;
      auto path = ini.Get(section, "path");
      if (!path) throw DataError("[" + section + "] needs a path");
      size_t min_len = DefaultMinTokenLength(config.language, label);
      if (auto v = ini.Get(section, "min_token_length")) min_len = ParseCount(section, "min_token_length", *v);
      NormalizeOptions norm;
      norm.lowercase = ini.GetBool(section, "lowercase", false);
      norm.fold_diacritics = ini.GetBool(section, "fold_diacritics", false);
      GazetteerLoad load = LoadGazetteer(Resolve(base_dir, *path), label, min_len, norm);
      config.warnings.insert(config.warnings.end(), load.warnings.begin(), load.warnings.end());
      config.ner.gazetteers.push_back(std::move(load.gazetteer));
    }
    if (ini.HasSection("date")) {
      DateRuleConfig dates =
          DateRuleConfig::ForLanguage(ini.GetOr("date", "language", config.language));
      if (auto v = ini.Get("date", "keywords")) dates.keywords = WordSet(*v);
      if (auto v = ini.Get("date", "month_names")) dates.month_names = WordSet(*v);
      if (auto v = ini.Get("date", "connectors")) dates.connectors = WordSet(*v);
      if (auto v = ini.Get("date", "conjunctions")) dates.conjunctions = WordSet(*v);
      if (auto v = ini.Get("date", "max_gap")) dates.max_gap = ParseCount("date", "max_gap", *v);
      dates.month_opens_span = ini.GetBool("date", "month_opens_span", dates.month_opens_span);
      try {
        dates.Validate();
      } catch (const std::invalid_argument &e) {
        throw DataError(std::string("[date] ") + e.what());
      }
      config.ner.dates = std::move(dates);
    }
    if (auto v = ini.Get("priority", "order")) config.ner.priority.order = SplitList(*v, true);
    return config;
  }

  if (!ini.HasSection("topic")) throw DataError("topic rules need a [topic] section");
  auto dir = ini.Get("topic", "dict_dir");
  if (!dir) throw DataError("[topic] needs dict_dir");
  const std::filesystem::path dict_dir = Resolve(base_dir, *dir);
  std::vector<std::string> classes;
  if (auto v = ini.Get("topic", "classes")) {
    classes = SplitList(*v, true);
  } else {
    std::error_code ec;
    for (const auto &entry : std::filesystem::directory_iterator(dict_dir, ec)) {
      if (entry.path().extension() == ".txt") classes.push_back(entry.path().stem().string());
    }
    if (ec) throw IoError("cannot list " + dict_dir.string());
    std::sort(classes.begin(), classes.end());
  }
  std::optional<std::filesystem::path> stage_one;
  if (auto v = ini.Get("topic", "stage_one")) stage_one = Resolve(base_dir, *v);
  DictionaryLoad load = LoadClassDictionaries(dict_dir, classes, stage_one);
  TopicRuleConfig topic;
  topic.dictionaries = std::move(load.dictionaries);
  topic.stage_one = std::move(load.stage_one);
  topic.abstain_on_empty = ini.GetBool("topic", "abstain_on_empty", true);
  if (auto v = ini.Get("topic", "tie_seed")) topic.tie_seed = ParseCount("topic", "tie_seed", *v);
  config.warnings.insert(config.warnings.end(), load.warnings.begin(), load.warnings.end());
  config.topic = std::move(topic);
  return config;
}

RuleConfig LoadRuleConfig(const std::filesystem::path &path, Task task) {
  IniFile ini = IniFile::Load(path);
  return ParseRuleConfig(ini, path.parent_path(), task);
}

}  // namespace weaksup
