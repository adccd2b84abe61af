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

#include "weaksup/annotators.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "weaksup/text.h"

namespace weaksup {
namespace {

std::set<std::string> Lowered(std::initializer_list<const char *> words) {
  std::set<std::string> out;
  for (const char *w : words) out.insert(Normalize(w, kTopicNormalization));
  return out;
}

TagSequence AllOutside(size_t n) { return TagSequence(n, std::string(kOutside)); }

}  // namespace

DateRuleConfig DateRuleConfig::Hausa() {
  DateRuleConfig config;
  config.keywords = Lowered({"ranar", "watan", "shekarar"});
  config.month_names =
      Lowered({"Janairu", "Fabrairu", "Maris", "Afrilu", "Mayu", "Yuni", "Yuli", "Agusta",
               "Satumba", "Oktoba", "Nuwamba", "Disamba"});
  config.connectors = Lowered({"ga", ",", "-", "/"});
  config.conjunctions = Lowered({"da", "zuwa", "har"});
  return config;
}

DateRuleConfig DateRuleConfig::Yoruba() {
  DateRuleConfig config;
  config.keywords = Lowered({"ọjọ́", "oṣù", "ọdún"});
  config.month_names =
      Lowered({"Ṣẹ́rẹ́", "Èrèlè", "Ẹrẹ̀nà", "Ìgbé", "Ẹ̀bibi", "Òkúdu", "Agẹmọ", "Ògún", "Owewe",
               "Ọ̀wàrà", "Bélú", "Ọ̀pẹ̀"});
  config.connectors = Lowered({",", "-", "/"});
  config.conjunctions = Lowered({"sí", "àti", "títí"});
  return config;
}

DateRuleConfig DateRuleConfig::ForLanguage(std::string_view language) {
  if (language == "ha") return Hausa();
  if (language == "yo") return Yoruba();
  return {};
}

void DateRuleConfig::Validate() const {
  if (keywords.empty()) throw std::invalid_argument("date rules need at least one keyword");
}

size_t LabelPriority::Rank(const std::string &type) const {
  auto it = std::find(order.begin(), order.end(), type);
  return static_cast<size_t>(it - order.begin());
}

TagSequence AnnotateWithGazetteer(const Sentence &sentence, const Gazetteer &gazetteer) {
  const size_t n = sentence.size();
  TagSequence tags = AllOutside(n);
  if (gazetteer.entries.empty()) return tags;

  std::vector<std::string> normalized;
  normalized.reserve(n);
  for (const Token &token : sentence.tokens) {
    normalized.push_back(Normalize(token.surface, gazetteer.normalization));
  }
  struct Match {
    size_t start;
    size_t length;
  };
  std::vector<Match> matches;
  for (size_t start = 0; start < n; ++start) {
    std::string key;
    for (size_t len = 1; len <= gazetteer.max_entry_tokens && start + len <= n; ++len) {
      if (len > 1) key += ' ';
      key += normalized[start + len - 1];
      if (gazetteer.entries.count(key)) matches.push_back({start, len});
    }
  }
  std::stable_sort(matches.begin(), matches.end(), [](const Match &a, const Match &b) {
    return a.length != b.length ? a.length > b.length : a.start < b.start;
  });
  std::vector<bool> taken(n, false);
  for (const Match &m : matches) {
    bool free = std::none_of(taken.begin() + static_cast<std::ptrdiff_t>(m.start),
                             taken.begin() + static_cast<std::ptrdiff_t>(m.start + m.length),
                             [](bool t) { return t; });
    if (!free) continue;
    for (size_t i = m.start; i < m.start + m.length; ++i) {
      taken[i] = true;
      tags[i] = (i == m.start ? "B-" : "I-") + gazetteer.label;
    }
  }
  return tags;
}

TagSequence AnnotateNerGazetteer(const Sentence &sentence,
                                 const std::vector<Gazetteer> &gazetteers,
                                 const LabelPriority &priority) {
  if (gazetteers.empty()) return AllOutside(sentence.size());
  std::vector<TagSequence> layers;
  layers.reserve(gazetteers.size());
  for (const Gazetteer &g : gazetteers) layers.push_back(AnnotateWithGazetteer(sentence, g));
  return MergeTagLayers(layers, priority);
}

TagSequence AnnotateNerDates(const Sentence &sentence, const DateRuleConfig &config) {
  const size_t n = sentence.size();
  TagSequence tags = AllOutside(n);
  std::vector<std::string> low;
  low.reserve(n);
  for (const Token &token : sentence.tokens) {
    low.push_back(Normalize(token.surface, kTopicNormalization));
  }
  auto is_keyword = [&](size_t i) { return config.keywords.count(low[i]) > 0; };
  auto is_month = [&](size_t i) { return config.month_names.count(low[i]) > 0; };
  auto is_digit = [&](size_t i) { return IsNumericToken(low[i]); };
  auto is_link = [&](size_t i) {
    return config.connectors.count(low[i]) > 0 || config.conjunctions.count(low[i]) > 0;
  };

  std::vector<std::pair<size_t, size_t>> spans;
  for (size_t i = 0; i < n;) {
    if (!is_keyword(i) && !(config.month_opens_span && is_month(i))) {
      ++i;
      continue;
    }
    size_t end = i;
    while (true) {
      if (end + 1 < n && (is_digit(end + 1) || is_month(end + 1))) {
        ++end;
        continue;
      }
      bool extended = false;
      for (size_t d = 2; d <= config.max_gap && end + d < n; ++d) {
        if (is_digit(end + d)) {
          end += d;
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
    spans.emplace_back(i, end);
    i = end + 1;
  }

  std::vector<std::pair<size_t, size_t>> merged;
  for (const auto &span : spans) {
    if (!merged.empty()) {
      auto &last = merged.back();
      const size_t gap = span.first - last.second - 1;
      bool linked = gap <= config.max_gap;
      for (size_t g = last.second + 1; linked && g < span.first; ++g) linked = is_link(g);
      if (linked) {
        last.second = span.second;
        continue;
      }
    }
    merged.push_back(span);
  }
  for (const auto &[start, end] : merged) {
    tags[start] = "B-DATE";
    for (size_t i = start + 1; i <= end; ++i) tags[i] = "I-DATE";
  }
  return tags;
}

TagSequence MergeTagLayers(const std::vector<TagSequence> &layers,
                           const LabelPriority &priority) {
  if (layers.empty()) throw std::invalid_argument("no tag layers to merge");
  const size_t n = layers.front().size();
  struct Candidate {
    Span span;
    size_t layer;
  };
  std::vector<Candidate> candidates;
  for (size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].size() != n) throw std::invalid_argument("tag layers differ in length");
    for (Span &span : ExtractSpans(layers[l])) candidates.push_back({std::move(span), l});
  }
  auto key = [&](const Candidate &c) {
    return std::make_tuple(-static_cast<long long>(c.span.length()), priority.Rank(c.span.type),
                           c.span.start, c.layer);
  };

  TagSequence tags = AllOutside(n);
  const Candidate *previous = nullptr;
  for (size_t i = 0; i < n; ++i) {
    const Candidate *winner = nullptr;
    for (const Candidate &c : candidates) {
      if (c.span.start <= i && i <= c.span.end && (!winner || key(c) < key(*winner))) {
        winner = &c;
      }
    }
    if (winner) tags[i] = (winner == previous ? "I-" : "B-") + winner->span.type;
    previous = winner;
  }
  return tags;
}

void TopicRuleConfig::Validate() const {
  std::set<std::string> seen;
  for (const ClassDictionary &d : dictionaries) {
    if (!seen.insert(d.class_label).second) {
      throw std::invalid_argument("duplicate dictionary class '" + d.class_label + "'");
    }
  }
}

std::set<std::string> HeadlineNgrams(const Sentence &sentence) {
  std::vector<std::string> low;
  for (const Token &token : sentence.tokens) {
    low.push_back(Normalize(token.surface, kTopicNormalization));
  }
  std::set<std::string> grams(low.begin(), low.end());
  for (size_t i = 0; i + 1 < low.size(); ++i) grams.insert(low[i] + ' ' + low[i + 1]);
  return grams;
}

std::optional<std::string> AnnotateTopic(const Sentence &sentence,
                                         const TopicRuleConfig &config, Rng &rng) {
  const std::set<std::string> grams = HeadlineNgrams(sentence);
  if (config.stage_one) {
    for (const auto &[keyword, label] : config.stage_one->entries) {
      if (grams.count(keyword)) return label;
    }
  }
  std::vector<size_t> best;
  size_t best_count = 0;
  for (size_t c = 0; c < config.dictionaries.size(); ++c) {
    size_t count = 0;
    for (const std::string &gram : grams) count += config.dictionaries[c].terms.count(gram);
    if (count > best_count) {
      best_count = count;
      best.assign(1, c);
    } else if (count == best_count && count > 0) {
      best.push_back(c);
    }
  }
  if (best_count == 0) {
    if (config.abstain_on_empty || config.dictionaries.empty()) return std::nullopt;
    return config.dictionaries[rng.UniformIndex(config.dictionaries.size())].class_label;
  }
  size_t pick = best.size() == 1 ? best.front() : best[rng.UniformIndex(best.size())];
  return config.dictionaries[pick].class_label;
}

namespace {

void MergeLabelSet(Dataset &dataset, const std::vector<std::string> &extra) {
  std::set<std::string> all(dataset.label_set.begin(), dataset.label_set.end());
  all.insert(extra.begin(), extra.end());
  dataset.label_set.assign(all.begin(), all.end());
}

}  // namespace

AnnotationResult ApplyRules(const Dataset &dataset, const NerRuleConfig &config) {
  if (dataset.task != Task::kNer) throw std::invalid_argument("NER rules on a topic dataset");
  if (config.dates) config.dates->Validate();
  AnnotationResult result;
  result.dataset = dataset;
  std::vector<std::string> produced;
  for (const Gazetteer &g : config.gazetteers) produced.push_back(g.label);
  if (config.dates) produced.push_back("DATE");
  for (Sentence &sentence : result.dataset.sentences) {
    std::vector<TagSequence> layers;
    for (const Gazetteer &g : config.gazetteers) {
      layers.push_back(AnnotateWithGazetteer(sentence, g));
    }
    if (config.dates) layers.push_back(AnnotateNerDates(sentence, *config.dates));
    sentence.weak_tags =
        layers.empty() ? AllOutside(sentence.size()) : MergeTagLayers(layers, config.priority);
  }
  MergeLabelSet(result.dataset, produced);
  return result;
}

AnnotationResult ApplyRules(const Dataset &dataset, const TopicRuleConfig &config) {
  if (dataset.task != Task::kTopic) throw std::invalid_argument("topic rules on an NER dataset");
  config.Validate();
  AnnotationResult result;
  result.dataset = dataset;
  std::vector<std::string> produced;
  for (const ClassDictionary &d : config.dictionaries) produced.push_back(d.class_label);
  if (config.stage_one) {
    for (const auto &entry : config.stage_one->entries) produced.push_back(entry.second);
  }
  for (size_t i = 0; i < result.dataset.sentences.size(); ++i) {
    Sentence &sentence = result.dataset.sentences[i];
    Rng rng(DeriveSeed({config.tie_seed, i}));
    sentence.weak_class = AnnotateTopic(sentence, config, rng);
    sentence.abstained = !sentence.weak_class.has_value();
    if (sentence.abstained) ++result.abstained;
  }
  if (!result.dataset.empty() && result.abstained == result.dataset.size()) {
    result.warnings.push_back("rules abstained on every sentence; no weak labels produced");
  }
  MergeLabelSet(result.dataset, produced);
  return result;
}

}  // namespace weaksup
