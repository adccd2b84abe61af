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

#include "weaksup/eval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "weaksup/errors.h"
#include "weaksup/io.h"

namespace weaksup {

std::vector<Span> ExtractSpans(const std::vector<std::string> &tags) {
  std::vector<Span> spans;
  std::optional<Span> open;
  for (size_t i = 0; i < tags.size(); ++i) {
    auto tag = ParseBioTag(tags[i]);
    if (!tag) throw DataError("malformed BIO2 tag '" + tags[i] + "'");
    if (tag->prefix == BioTag::Prefix::kInside && open && open->type == tag->type) {
      open->end = i;
      continue;
    }
    if (open) spans.push_back(*open);
    open.reset();
    if (tag->prefix != BioTag::Prefix::kOutside) open = Span{tag->type, i, i};
  }
  if (open) spans.push_back(*open);
  return spans;
}

std::vector<std::string> TagsFromSpans(const std::vector<Span> &spans, size_t length) {
  std::vector<std::string> tags(length, std::string(kOutside));
  for (const Span &span : spans) {
    if (span.start > span.end || span.end >= length) {
      throw std::out_of_range("span outside sequence");
    }
    tags[span.start] = "B-" + span.type;
    for (size_t i = span.start + 1; i <= span.end; ++i) tags[i] = "I-" + span.type;
  }
  return tags;
}

const LabelScore *Metrics::Find(const std::string &label) const {
  for (const LabelScore &score : per_label) {
    if (score.label == label) return &score;
  }
  return nullptr;
}

double F1Score(double precision, double recall) {
  return precision + recall == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
}

namespace {

double SafeDivide(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct Counts {
  size_t tp = 0;
  size_t gold = 0;
  size_t predicted = 0;
};

Metrics FromCounts(const std::map<std::string, Counts> &by_label, const Counts &total) {
  Metrics metrics;
  for (const auto &[label, c] : by_label) {
    LabelScore score;
    score.label = label;
    score.precision = SafeDivide(c.tp, c.predicted);
    score.recall = SafeDivide(c.tp, c.gold);
    score.f1 = F1Score(score.precision, score.recall);
    score.support = c.gold;
    score.predicted = c.predicted;
    score.true_positives = c.tp;
    metrics.per_label.push_back(score);
  }
  metrics.micro.precision = SafeDivide(total.tp, total.predicted);
  metrics.micro.recall = SafeDivide(total.tp, total.gold);
  metrics.micro.f1 = F1Score(metrics.micro.precision, metrics.micro.recall);
  if (!metrics.per_label.empty()) {
    const double k = static_cast<double>(metrics.per_label.size());
    for (const LabelScore &s : metrics.per_label) {
      metrics.macro.precision += s.precision / k;
      metrics.macro.recall += s.recall / k;
      metrics.macro.f1 += s.f1 / k;
    }
  }
  return metrics;
}

}  // namespace

Metrics SpanF1(const std::vector<std::vector<std::string>> &gold,
               const std::vector<std::vector<std::string>> &predicted) {
  if (gold.size() != predicted.size()) {
    throw DataError("span F1: " + std::to_string(gold.size()) + " gold vs " +
                    std::to_string(predicted.size()) + " predicted sentences");
  }
  std::map<std::string, Counts> by_type;
  Counts total;
  for (size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      throw DataError("span F1: length mismatch in sentence " + std::to_string(s));
    }
    std::vector<Span> g = ExtractSpans(gold[s]);
    std::vector<Span> p = ExtractSpans(predicted[s]);
    for (const Span &span : g) ++by_type[span.type].gold;
    for (const Span &span : p) ++by_type[span.type].predicted;
    // Spans within one sequence are disjoint, so each gold span matches at
    // most one prediction.
    for (const Span &span : p) {
      if (std::find(g.begin(), g.end(), span) != g.end()) ++by_type[span.type].tp;
    }
  }
  for (const auto &[type, c] : by_type) {
    total.tp += c.tp;
    total.gold += c.gold;
    total.predicted += c.predicted;
  }
  return FromCounts(by_type, total);
}

Metrics SpanF1(const Dataset &gold, const std::vector<std::vector<std::string>> &predicted) {
  std::vector<std::vector<std::string>> tags;
  tags.reserve(gold.size());
  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    const Sentence &s = gold.sentences[i];
    if (!s.gold_tags) throw DataError("sentence " + std::to_string(i) + " has no gold tags");
    tags.push_back(*s.gold_tags);
  }
  return SpanF1(tags, predicted);
}

Metrics ClassificationMetrics(const std::vector<std::string> &gold,
                              const std::vector<std::string> &predicted,
                              std::optional<std::vector<std::string>> labels) {
  if (gold.size() != predicted.size()) {
    throw DataError("classification metrics: " + std::to_string(gold.size()) + " gold vs " +
                    std::to_string(predicted.size()) + " predicted labels");
  }
  if (!labels) {
    std::set<std::string> all(gold.begin(), gold.end());
    all.insert(predicted.begin(), predicted.end());
    all.erase(std::string(kAbstain));
    labels = std::vector<std::string>(all.begin(), all.end());
  }
  std::map<std::string, Counts> by_label;
  for (const std::string &label : *labels) by_label[label];
  Counts total;
  for (size_t i = 0; i < gold.size(); ++i) {
    auto g = by_label.find(gold[i]);
    auto p = by_label.find(predicted[i]);
    if (g != by_label.end()) {
      ++g->second.gold;
      ++total.gold;
    }
    if (p != by_label.end()) {
      ++p->second.predicted;
      ++total.predicted;
    }
    if (g != by_label.end() && gold[i] == predicted[i]) {
      ++g->second.tp;
      ++total.tp;
    }
  }
  Metrics metrics = FromCounts(by_label, total);
  // Keep the caller's label order.
  std::vector<LabelScore> ordered;
  for (const std::string &label : *labels) ordered.push_back(*metrics.Find(label));
  metrics.per_label = std::move(ordered);
  return metrics;
}

AggregateMetrics AggregateRuns(const std::vector<double> &values) {
  if (values.empty()) throw std::invalid_argument("aggregate of zero runs");
  AggregateMetrics agg;
  agg.n = values.size();
  const double n = static_cast<double>(agg.n);
  double sum = 0;
  for (double v : values) sum += v;
  agg.mean = sum / n;
  if (agg.n > 1) {
    double squares = 0;
    for (double v : values) squares += (v - agg.mean) * (v - agg.mean);
    agg.standard_error = std::sqrt(squares / (n - 1)) / std::sqrt(n);
  }
  return agg;
}

RunVerdict ConvergenceFilter(const Metrics &dev_metrics) {
  size_t zeros = 0;
  for (const LabelScore &score : dev_metrics.per_label) {
    if (score.f1 == 0.0) ++zeros;
  }
  return zeros >= 2 ? RunVerdict::kFlag : RunVerdict::kKeep;
}

std::string FormatMetricsTable(const Metrics &metrics) {
  size_t width = 8;
  for (const LabelScore &s : metrics.per_label) width = std::max(width, s.label.size() + 2);
  std::ostringstream out;
  auto row = [&](const std::string &label, double p, double r, double f,
                 const std::string &support) {
    out << label << std::string(width - label.size(), ' ') << FormatFixed(100 * p, 2) << '\t'
        << FormatFixed(100 * r, 2) << '\t' << FormatFixed(100 * f, 2) << '\t' << support
        << '\n';
  };
  out << "label" << std::string(width - 5, ' ') << "P\tR\tF1\tsupport\n";
  size_t total_support = 0;
  for (const LabelScore &s : metrics.per_label) {
    row(s.label, s.precision, s.recall, s.f1, std::to_string(s.support));
    total_support += s.support;
  }
  row("micro", metrics.micro.precision, metrics.micro.recall, metrics.micro.f1,
      std::to_string(total_support));
  row("macro", metrics.macro.precision, metrics.macro.recall, metrics.macro.f1,
      std::to_string(total_support));
  return out.str();
}

std::string MetricsCsv(const Metrics &metrics, const std::string &setting,
                       const std::string &seed, bool with_header) {
  std::string out;
  if (with_header) out += "setting,seed,label,precision,recall,f1,support\n";
  size_t total_support = 0;
  auto row = [&](const std::string &label, double p, double r, double f, size_t support) {
    out += setting + ',' + seed + ',' + label + ',' + FormatFixed(p, 6) + ',' +
           FormatFixed(r, 6) + ',' + FormatFixed(f, 6) + ',' + std::to_string(support) + '\n';
  };
  for (const LabelScore &s : metrics.per_label) {
    row(s.label, s.precision, s.recall, s.f1, s.support);
    total_support += s.support;
  }
  row("micro", metrics.micro.precision, metrics.micro.recall, metrics.micro.f1, total_support);
  row("macro", metrics.macro.precision, metrics.macro.recall, metrics.macro.f1, total_support);
  return out;
}

}  // namespace weaksup
