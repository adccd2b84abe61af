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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "weaksup/annotators.h"
#include "weaksup/corpus.h"
#include "weaksup/errors.h"
#include "weaksup/eval.h"
#include "weaksup/noisemodel.h"
#include "weaksup/random.h"
#include "weaksup/text.h"

namespace py = pybind11;

namespace weaksup {
namespace {

using Rows = std::vector<std::vector<double>>;

ConfusionMatrix FromRows(const std::vector<std::string> &labels, const Rows &rows) {
  std::vector<double> flat;
  for (const auto &row : rows) {
    if (row.size() != labels.size()) throw std::invalid_argument("matrix must be K x K");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ConfusionMatrix(labels, flat);
}

Rows ToRows(const ConfusionMatrix &cm) {
  Rows rows;
  for (size_t i = 0; i < cm.size(); ++i) rows.emplace_back(cm.Row(i).begin(), cm.Row(i).end());
  return rows;
}

py::dict Averages(double p, double r, double f) {
  py::dict d;
  d["precision"] = p;
  d["recall"] = r;
  d["f1"] = f;
  return d;
}

py::dict ToDict(const Metrics &m) {
  py::dict per_label;
  for (const LabelScore &s : m.per_label) {
    py::dict d = Averages(s.precision, s.recall, s.f1);
    d["support"] = s.support;
    d["predicted"] = s.predicted;
    per_label[py::str(s.label)] = d;
  }
  py::dict out;
  out["micro"] = Averages(m.micro.precision, m.micro.recall, m.micro.f1);
  out["macro"] = Averages(m.macro.precision, m.macro.recall, m.macro.f1);
  out["per_label"] = per_label;
  return out;
}

std::vector<std::string> Surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const Token &t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace
}  // namespace weaksup

PYBIND11_MODULE(_core, m) {
  using namespace weaksup;
  m.doc() = "Distant supervision and noisy-label learning primitives";

  static py::exception<DataError> data_error(m, "DataError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DataError &e) {
      data_error(e.what());
    }
  });

  m.def("normalize", [](const std::string &text, bool lowercase, bool fold_diacritics) {
    return Normalize(text, {lowercase, fold_diacritics});
  }, py::arg("text"), py::arg("lowercase") = false, py::arg("fold_diacritics") = false);

  m.def("tokenize", [](const std::string &text) { return Surfaces(Tokenize(text)); },
        py::arg("text"));

  m.def("derive_seed", [](const std::vector<uint64_t> &parts) {
    return DeriveSeed(std::span<const uint64_t>(parts));
  }, py::arg("parts"));

  m.def("extract_spans", [](const std::vector<std::string> &tags) {
    std::vector<std::tuple<std::string, size_t, size_t>> out;
    for (const Span &s : ExtractSpans(tags)) out.emplace_back(s.type, s.start, s.end);
    return out;
  }, py::arg("tags"), "Entity spans as (type, start, end) with inclusive end.");

  m.def("span_f1", [](const std::vector<std::vector<std::string>> &gold,
                      const std::vector<std::vector<std::string>> &predicted) {
    return ToDict(SpanF1(gold, predicted));
  }, py::arg("gold"), py::arg("predicted"));

  m.def("classification_metrics", [](const std::vector<std::string> &gold,
                                     const std::vector<std::string> &predicted,
                                     std::optional<std::vector<std::string>> labels) {
    return ToDict(ClassificationMetrics(gold, predicted, std::move(labels)));
  }, py::arg("gold"), py::arg("predicted"), py::arg("labels") = py::none());

  m.def("aggregate_runs", [](const std::vector<double> &values) {
    AggregateMetrics a = AggregateRuns(values);
    return std::make_pair(a.mean, a.standard_error);
  }, py::arg("values"), "Mean and standard error of per-seed scores.");

  m.def("convergence_filter", [](const std::vector<double> &dev_f1_per_class) {
    Metrics metrics;
    for (double f : dev_f1_per_class) metrics.per_label.push_back({"", 0, 0, f});
    return ConvergenceFilter(metrics) == RunVerdict::kFlag;
  }, py::arg("dev_f1_per_class"), "True when the run should be discarded and reseeded.");

  m.def("estimate_confusion_matrix", [](const std::vector<std::string> &clean,
                                        const std::vector<std::string> &noisy,
                                        const std::vector<std::string> &labels) {
    return ToRows(EstimateConfusionMatrix(std::span<const std::string>(clean),
                                          std::span<const std::string>(noisy), labels));
  }, py::arg("clean"), py::arg("noisy"), py::arg("labels"));

  m.def("smooth_confusion_matrix", [](const Rows &matrix, double beta) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i));
    return ToRows(SmoothConfusionMatrix(FromRows(labels, matrix), {beta}));
  }, py::arg("matrix"), py::arg("beta") = kDefaultBeta);

  m.def("apply_noise_channel", [](const std::vector<double> &distribution, const Rows &matrix) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i));
    return ApplyNoiseChannel(distribution, FromRows(labels, matrix));
  }, py::arg("distribution"), py::arg("matrix"));

  m.def("annotate_dates", [](const std::vector<std::string> &tokens, const std::string &language) {
    DateRuleConfig config = DateRuleConfig::ForLanguage(language);
    config.Validate();
    return AnnotateNerDates(MakeSentence(tokens), config);
  }, py::arg("tokens"), py::arg("language"));
}
