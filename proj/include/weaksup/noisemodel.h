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

// Clean -> noisy label confusion matrix: estimation from aligned label
// pairs, power smoothing and composition with a clean output distribution.

#ifndef WEAKSUP_NOISEMODEL_H_
#define WEAKSUP_NOISEMODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weaksup {

// Row-stochastic K x K matrix, entry (i, j) = P(noisy = j | clean = i).
class ConfusionMatrix {
 public:
  // Validates shape, entries in [0, 1] and row sums within 1e-9.
  ConfusionMatrix(std::vector<std::string> labels, std::vector<double> row_major);

  static ConfusionMatrix Identity(std::vector<std::string> labels);

  size_t size() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  double operator()(size_t clean, size_t noisy) const { return values_[clean * size() + noisy]; }
  std::span<const double> Row(size_t clean) const {
    return {values_.data() + clean * size(), size()};
  }
  const std::vector<double> &values() const { return values_; }
  size_t IndexOf(std::string_view label) const;

  bool IsIdentity() const;

  // Same matrix with rows and columns permuted to `labels`, which must be a
  // permutation of labels().
  ConfusionMatrix Reordered(const std::vector<std::string> &labels) const;

  bool operator==(const ConfusionMatrix &) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

inline constexpr double kDefaultBeta = 0.8;

struct SmoothingConfig {
  double beta = kDefaultBeta;
};

struct EstimateOptions {
  // When false, pairs whose clean label is "O" are skipped and the O row
  // falls back to the identity.
  bool include_outside = true;
};

// Relative pair frequencies per clean label. Rows of labels that never occur
// as clean become identity rows. Throws DataError on length mismatch or a
// label outside `labels`.
ConfusionMatrix EstimateConfusionMatrix(std::span<const std::string> clean,
                                        std::span<const std::string> noisy,
                                        const std::vector<std::string> &labels,
                                        const EstimateOptions &options = {});

// Token-level estimate over aligned tag sequences.
ConfusionMatrix EstimateConfusionMatrix(const std::vector<std::vector<std::string>> &clean,
                                        const std::vector<std::vector<std::string>> &noisy,
                                        const std::vector<std::string> &labels,
                                        const EstimateOptions &options = {});

// Entry-wise power beta followed by row normalization; 0^beta = 0.
ConfusionMatrix SmoothConfusionMatrix(const ConfusionMatrix &matrix,
                                      const SmoothingConfig &config);

// q[j] = sum_i p[i] * C(i, j).
std::vector<double> ApplyNoiseChannel(std::span<const double> distribution,
                                      const ConfusionMatrix &matrix);

// Header line of labels, then K rows of K probabilities, tab-separated.
std::string WriteConfusionMatrix(const ConfusionMatrix &matrix);
ConfusionMatrix ParseConfusionMatrix(std::string_view text);

}  // namespace weaksup

#endif  // WEAKSUP_NOISEMODEL_H_
