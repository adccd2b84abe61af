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

#include "weaksup/noisemodel.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "weaksup/corpus.h"
#include "weaksup/errors.h"
#include "weaksup/io.h"
#include "weaksup/text.h"

namespace weaksup {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels, std::vector<double> row_major)
    : labels_(std::move(labels)), values_(std::move(row_major)) {
  const size_t k = labels_.size();
  if (k == 0) throw std::invalid_argument("confusion matrix needs at least one label");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != k) {
    throw std::invalid_argument("confusion matrix labels are not unique");
  }
  if (values_.size() != k * k) throw std::invalid_argument("confusion matrix is not K x K");
  for (size_t i = 0; i < k; ++i) {
    double sum = 0;
    for (size_t j = 0; j < k; ++j) {
      double v = values_[i * k + j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("confusion matrix entry outside [0, 1]");
      }
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("confusion matrix row " + labels_[i] + " sums to " +
                                  FormatDouble(sum));
    }
  }
}

ConfusionMatrix ConfusionMatrix::Identity(std::vector<std::string> labels) {
  const size_t k = labels.size();
  std::vector<double> values(k * k, 0.0);
  for (size_t i = 0; i < k; ++i) values[i * k + i] = 1.0;
  return ConfusionMatrix(std::move(labels), std::move(values));
}

size_t ConfusionMatrix::IndexOf(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::out_of_range("label '" + std::string(label) + "' not in confusion matrix");
  }
  return static_cast<size_t>(it - labels_.begin());
}

bool ConfusionMatrix::IsIdentity() const {
  for (size_t i = 0; i < size(); ++i) {
    for (size_t j = 0; j < size(); ++j) {
      if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

ConfusionMatrix ConfusionMatrix::Reordered(const std::vector<std::string> &labels) const {
  if (labels.size() != size()) throw std::invalid_argument("label sets differ in size");
  std::vector<size_t> source;
  for (const std::string &label : labels) source.push_back(IndexOf(label));
  std::vector<double> values(size() * size());
  for (size_t i = 0; i < size(); ++i) {
    for (size_t j = 0; j < size(); ++j) values[i * size() + j] = (*this)(source[i], source[j]);
  }
  return ConfusionMatrix(labels, std::move(values));
}

ConfusionMatrix EstimateConfusionMatrix(std::span<const std::string> clean,
                                        std::span<const std::string> noisy,
                                        const std::vector<std::string> &labels,
                                        const EstimateOptions &options) {
  if (clean.size() != noisy.size()) {
    throw DataError("clean/noisy alignment mismatch: " + std::to_string(clean.size()) + " vs " +
                    std::to_string(noisy.size()));
  }
  const size_t k = labels.size();
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < k; ++i) index.emplace(labels[i], i);
  auto lookup = [&](const std::string &label) {
    auto it = index.find(label);
    if (it == index.end()) throw DataError("label '" + label + "' not in label list");
    return it->second;
  };

  std::vector<size_t> counts(k * k, 0);
  std::vector<size_t> row_totals(k, 0);
  for (size_t n = 0; n < clean.size(); ++n) {
    size_t i = lookup(clean[n]);
    size_t j = lookup(noisy[n]);
    if (!options.include_outside && clean[n] == kOutside) continue;
    ++counts[i * k + j];
    ++row_totals[i];
  }
  std::vector<double> values(k * k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    if (row_totals[i] == 0) {
      values[i * k + i] = 1.0;
      continue;
    }
    for (size_t j = 0; j < k; ++j) {
      values[i * k + j] =
          static_cast<double>(counts[i * k + j]) / static_cast<double>(row_totals[i]);
    }
  }
  return ConfusionMatrix(labels, std::move(values));
}

ConfusionMatrix EstimateConfusionMatrix(const std::vector<std::vector<std::string>> &clean,
                                        const std::vector<std::vector<std::string>> &noisy,
                                        const std::vector<std::string> &labels,
                                        const EstimateOptions &options) {
  if (clean.size() != noisy.size()) {
    throw DataError("clean/noisy sentence counts differ: " + std::to_string(clean.size()) +
                    " vs " + std::to_string(noisy.size()));
  }
  std::vector<std::string> flat_clean, flat_noisy;
  for (size_t s = 0; s < clean.size(); ++s) {
    if (clean[s].size() != noisy[s].size()) {
      throw DataError("clean/noisy length mismatch in sentence " + std::to_string(s));
    }
    flat_clean.insert(flat_clean.end(), clean[s].begin(), clean[s].end());
    flat_noisy.insert(flat_noisy.end(), noisy[s].begin(), noisy[s].end());
  }
  return EstimateConfusionMatrix(std::span<const std::string>(flat_clean),
                                 std::span<const std::string>(flat_noisy), labels, options);
}

ConfusionMatrix SmoothConfusionMatrix(const ConfusionMatrix &matrix,
                                      const SmoothingConfig &config) {
  if (!(config.beta > 0.0 && config.beta <= 1.0)) {
    throw std::invalid_argument("smoothing beta must lie in (0, 1]");
  }
  const size_t k = matrix.size();
  std::vector<double> values(k * k);
  for (size_t i = 0; i < k; ++i) {
    double sum = 0;
    for (size_t j = 0; j < k; ++j) {
      double v = matrix(i, j);
      values[i * k + j] = v == 0.0 ? 0.0 : std::pow(v, config.beta);
      sum += values[i * k + j];
    }
    if (sum == 0.0) throw std::invalid_argument("cannot normalize an all-zero row");
    for (size_t j = 0; j < k; ++j) values[i * k + j] /= sum;
  }
  return ConfusionMatrix(matrix.labels(), std::move(values));
}

std::vector<double> ApplyNoiseChannel(std::span<const double> distribution,
                                      const ConfusionMatrix &matrix) {
  const size_t k = matrix.size();
  if (distribution.size() != k) {
    throw std::invalid_argument("distribution has " + std::to_string(distribution.size()) +
                                " entries, channel has " + std::to_string(k));
  }
  double total = 0;
  for (double p : distribution) total += p;
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
  std::vector<double> out(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) out[j] += distribution[i] * matrix(i, j);
  }
  return out;
}

std::string WriteConfusionMatrix(const ConfusionMatrix &matrix) {
  std::string out = Join(matrix.labels(), "\t") + '\n';
  for (size_t i = 0; i < matrix.size(); ++i) {
    for (size_t j = 0; j < matrix.size(); ++j) {
      if (j > 0) out += '\t';
      out += FormatDouble(matrix(i, j));
    }
    out += '\n';
  }
  return out;
}

ConfusionMatrix ParseConfusionMatrix(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "empty confusion matrix file");
  std::vector<std::string> labels = SplitFields(lines[0], '\t');
  const size_t k = labels.size();
  if (lines.size() != k + 1) {
    throw ParseError(lines.size(), "expected " + std::to_string(k) + " matrix rows");
  }
  std::vector<double> values;
  for (size_t i = 1; i <= k; ++i) {
    std::vector<std::string> fields = SplitFields(lines[i], '\t');
    if (fields.size() != k) throw ParseError(i + 1, "expected " + std::to_string(k) + " values");
    for (const std::string &field : fields) {
      try {
        values.push_back(ParseDouble(field));
      } catch (const DataError &e) {
        throw ParseError(i + 1, e.what());
      }
    }
  }
  try {
    return ConfusionMatrix(std::move(labels), std::move(values));
  } catch (const std::invalid_argument &e) {
    throw DataError(e.what());
  }
}

}  // namespace weaksup
