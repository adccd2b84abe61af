# Copyright 2026 The Weaksup Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Distant supervision and noisy-label learning toolkit."""

from weaksup._core import (
    DataError,
    aggregate_runs,
    annotate_dates,
    apply_noise_channel,
    classification_metrics,
    convergence_filter,
    derive_seed,
    estimate_confusion_matrix,
    extract_spans,
    normalize,
    smooth_confusion_matrix,
    span_f1,
    tokenize,
)

__all__ = [
    "DataError",
    "aggregate_runs",
    "annotate_dates",
    "apply_noise_channel",
    "classification_metrics",
    "convergence_filter",
    "derive_seed",
    "estimate_confusion_matrix",
    "extract_spans",
    "normalize",
    "smooth_confusion_matrix",
    "span_f1",
    "tokenize",
]
