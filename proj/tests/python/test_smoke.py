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

import math

import pytest

import weaksup


def test_tokenize_and_dates():
    tokens = weaksup.tokenize("ranar 18 ga watan Mayu, shekarar 2019")
    assert len(tokens) == 8
    tags = weaksup.annotate_dates(tokens, "ha")
    assert weaksup.extract_spans(tags) == [("DATE", 0, 7)]
    assert weaksup.annotate_dates(["Mutane", "25", "sun", "zo"], "ha") == ["O"] * 4


def test_normalize():
    assert weaksup.normalize("KANO", lowercase=True) == "kano"
    assert weaksup.normalize("Ọ̀yọ́", lowercase=True, fold_diacritics=True) == "oyo"


def test_span_f1_worked_example():
    m = weaksup.span_f1([["B-PER", "I-PER", "O", "O"]], [["B-PER", "I-PER", "O", "B-LOC"]])
    assert m["micro"]["precision"] == 0.5
    assert m["micro"]["recall"] == 1.0
    assert math.isclose(m["micro"]["f1"], 2 / 3)
    assert m["per_label"]["PER"]["support"] == 1


def test_classification_macro():
    m = weaksup.classification_metrics(["A", "A", "B"], ["A", "B", "B"])
    assert math.isclose(m["macro"]["f1"], 2 / 3)


def test_confusion_matrix_pipeline():
    cm = weaksup.estimate_confusion_matrix(["A", "A", "A", "B"], ["A", "B", "A", "B"], ["A", "B"])
    assert cm[0] == pytest.approx([2 / 3, 1 / 3])
    assert cm[1] == [0.0, 1.0]
    smoothed = weaksup.smooth_confusion_matrix([[0.8, 0.2], [0.5, 0.5]], 0.8)
    assert smoothed[0] == pytest.approx([0.75195, 0.24805], abs=1e-5)
    assert weaksup.smooth_confusion_matrix(cm, 1.0)[0] == pytest.approx(cm[0])
    q = weaksup.apply_noise_channel([0.5, 0.5], [[0.7, 0.3], [0.1, 0.9]])
    assert q == pytest.approx([0.4, 0.6])


def test_aggregate_and_filter():
    mean, stderr = weaksup.aggregate_runs([0.5, 0.7])
    assert mean == pytest.approx(0.6)
    assert stderr == pytest.approx(0.1)
    assert weaksup.convergence_filter([0.0, 0.0, 0.4])
    assert not weaksup.convergence_filter([0.0, 0.3, 0.4])


def test_derive_seed_is_stable():
    assert weaksup.derive_seed([1, 2]) == weaksup.derive_seed([1, 2])
    assert weaksup.derive_seed([1, 2]) != weaksup.derive_seed([2, 1])


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        weaksup.extract_spans(["X-PER"])
    with pytest.raises(ValueError):
        weaksup.smooth_confusion_matrix([[0.5, 0.6], [0.0, 1.0]], 0.8)
    with pytest.raises(weaksup.DataError):
        weaksup.span_f1([["O"]], [])
