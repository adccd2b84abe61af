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

#ifndef WEAKSUP_EVAL_H_
#define WEAKSUP_EVAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weaksup/corpus.h"

namespace weaksup {

struct Span {
  std::string type;
  size_t start = 0;
  size_t end = 0;  // inclusive

  size_t length() const { return end - start + 1; }

  auto operator<=>(const Span &) const = default;
};

// Maximal same-type runs opened by B-X or by an orphan I-X. Throws
// DataError on a malformed tag string.
std::vector<Span> ExtractSpans(const std::vector<std::string> &tags);

// Inverse of ExtractSpans for non-overlapping spans.
std::vector<std::string> TagsFromSpans(const std::vector<Span> &spans, size_t length);

struct LabelScore {
  std::string label;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t support = 0;    // gold count
  size_t predicted = 0;  // predicted count
  size_t true_positives = 0;
};

struct Averages {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct Metrics {
  std::vector<LabelScore> per_label;
  Averages micro;
  Averages macro;

  const LabelScore *Find(const std::string &label) const;
};

// F1 = 2PR/(P+R), 0 when P+R = 0.
double F1Score(double precision, double recall);

// Exact (type, start, end) span matching; micro averages over all spans,
// per-type breakdown, macro over the types present in gold or prediction.
Metrics SpanF1(const std::vector<std::vector<std::string>> &gold,
               const std::vector<std::vector<std::string>> &predicted);
Metrics SpanF1(const Dataset &gold, const std::vector<std::vector<std::string>> &predicted);

// Per-class precision/recall/F1 with micro and macro averages, following
// scikit-learn's definitions (zero division yields 0). `labels` defaults to
// the sorted union of gold and predicted labels; predictions outside it
// (e.g. ABSTAIN) only count as misses.
Metrics ClassificationMetrics(const std::vector<std::string> &gold,
                              const std::vector<std::string> &predicted,
                              std::optional<std::vector<std::string>> labels = {});

struct AggregateMetrics {
  double mean = 0;
  // Sample standard deviation (n - 1) divided by sqrt(n); 0 for n = 1.
  double standard_error = 0;
  size_t n = 0;
};

AggregateMetrics AggregateRuns(const std::vector<double> &values);

enum class RunVerdict { kKeep, kFlag };

// Flags a run whose development metrics have two or more labels with F1
// exactly 0.
RunVerdict ConvergenceFilter(const Metrics &dev_metrics);

std::string FormatMetricsTable(const Metrics &metrics);

// Rows "setting,seed,label,precision,recall,f1,support"; the header is
// written when `with_header` is set. Micro and macro rows use the labels
// "micro" and "macro".
std::string MetricsCsv(const Metrics &metrics, const std::string &setting,
                       const std::string &seed, bool with_header);

}  // namespace weaksup

#endif  // WEAKSUP_EVAL_H_
