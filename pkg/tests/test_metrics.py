import random

import pytest
from hypothesis import given, settings, strategies as st

from logictree.metrics import (
    FALLACY,
    NO_FALLACY,
    build_label_map,
    classification_metrics,
    detection_metrics,
    unify_label,
)
from oracle_metrics import brute_force_report


# --- label unification ------------------------------------------------------


def test_unify_alias_pairs(catalog):
    label_map = build_label_map(catalog)
    assert unify_label("False Dilemma", label_map) == "Black-and-White Fallacy"
    assert unify_label("Post Hoc", label_map) == "False Cause"
    assert unify_label("Fallacy of Credibility", label_map) == "Irrelevant Authority"
    assert unify_label("Fallacy of Relevance", label_map) == "Red Herring"
    assert unify_label("fallacy of credibility", label_map) == "Irrelevant Authority"
    assert unify_label("  false   dilemma ", label_map) == "Black-and-White Fallacy"


def test_canonical_names_are_fixed_points(catalog):
    label_map = build_label_map(catalog)
    for name in catalog.definitions:
        assert unify_label(name, label_map) == name


def test_unknown_label_passes_through(catalog):
    label_map = build_label_map(catalog)
    assert unify_label("Completely Novel Fallacy", label_map) == "Completely Novel Fallacy"


# --- detection --------------------------------------------------------------


def test_detection_all_correct():
    labels = [FALLACY, NO_FALLACY, FALLACY]
    report = detection_metrics(labels, labels)
    fallacy = report.per_class[FALLACY]
    assert (fallacy.precision, fallacy.recall, fallacy.f1) == (100.0, 100.0, 100.0)
    assert report.accuracy == 100.0


def test_detection_hand_confusion_matrix():
    # preds [F,F,N,N] vs golds [F,N,F,N]: tp=1 fp=1 fn=1 -> all 50
    preds = [FALLACY, FALLACY, NO_FALLACY, NO_FALLACY]
    golds = [FALLACY, NO_FALLACY, FALLACY, NO_FALLACY]
    report = detection_metrics(preds, golds)
    fallacy = report.per_class[FALLACY]
    assert fallacy.precision == 50.0
    assert fallacy.recall == 50.0
    assert fallacy.f1 == 50.0
    assert report.accuracy == 50.0


def test_detection_no_predicted_positives():
    preds = [NO_FALLACY, NO_FALLACY]
    golds = [FALLACY, NO_FALLACY]
    report = detection_metrics(preds, golds)
    fallacy = report.per_class[FALLACY]
    assert fallacy.precision == 0.0
    assert fallacy.f1 == 0.0


def test_detection_input_validation():
    with pytest.raises(ValueError, match="length"):
        detection_metrics([FALLACY], [FALLACY, FALLACY])
    with pytest.raises(ValueError, match="empty"):
        detection_metrics([], [])
    with pytest.raises(ValueError, match="labels"):
        detection_metrics(["yes"], [FALLACY])


# --- classification ---------------------------------------------------------


def test_classification_perfect():
    labels = ["A", "B", "C", "A"]
    report = classification_metrics(labels, labels)
    assert report.macro_f1 == 100.0
    assert report.accuracy == 100.0


def test_classification_hand_example():
    # golds [A,A,B], preds [A,B,B]:
    #   A: P=100, R=50, F1=2*100*50/150; B: P=50, R=100, F1 same
    golds = ["A", "A", "B"]
    preds = ["A", "B", "B"]
    report = classification_metrics(preds, golds)
    f1 = 2.0 * 100.0 * 50.0 / 150.0
    assert report.per_class["A"].precision == 100.0
    assert report.per_class["A"].recall == 50.0
    assert abs(report.per_class["A"].f1 - f1) < 1e-9
    assert report.per_class["B"].precision == 50.0
    assert report.per_class["B"].recall == 100.0
    assert abs(report.macro_f1 - f1) < 1e-9
    assert abs(report.accuracy - 200.0 / 3.0) < 1e-9


def test_classification_predicted_only_class_excluded():
    golds = ["A", "A"]
    preds = ["A", "Z"]
    report = classification_metrics(preds, golds)
    assert "Z" not in report.per_class
    assert any("Z" in d for d in report.diagnostics)


def test_classification_applies_label_map(catalog):
    label_map = build_label_map(catalog)
    golds = ["Black-and-White Fallacy", "False Cause"]
    preds = ["False Dilemma", "Post Hoc"]
    report = classification_metrics(preds, golds, label_map)
    assert report.accuracy == 100.0


# --- oracle equivalence -----------------------------------------------------


def assert_matches_oracle(preds, golds, report):
    expected = brute_force_report(preds, golds)
    assert report.macro_precision == expected["macro_precision"]
    assert report.macro_recall == expected["macro_recall"]
    assert report.macro_f1 == expected["macro_f1"]
    assert report.accuracy == expected["accuracy"]
    assert set(report.per_class) == set(expected["per_class"])
    for cls, metrics in report.per_class.items():
        want = expected["per_class"][cls]
        assert metrics.precision == want["precision"]
        assert metrics.recall == want["recall"]
        assert metrics.f1 == want["f1"]
        assert metrics.support == want["support"]


def test_oracle_equivalence_detection_and_classification():
    labels = ["Red Herring", "False Cause", "Ad Hominem", "Vagueness", "Strawman"]
    for seed in range(10):
        rng = random.Random(seed)
        n = 1000
        det_preds = [rng.choice([FALLACY, NO_FALLACY]) for _ in range(n)]
        det_golds = [rng.choice([FALLACY, NO_FALLACY]) for _ in range(n)]
        assert_matches_oracle(det_preds, det_golds, detection_metrics(det_preds, det_golds))
        cls_preds = [rng.choice(labels) for _ in range(n)]
        cls_golds = [rng.choice(labels) for _ in range(n)]
        assert_matches_oracle(cls_preds, cls_golds, classification_metrics(cls_preds, cls_golds))


# --- properties -------------------------------------------------------------

LABELS = st.sampled_from(["A", "B", "C"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(LABELS, LABELS), min_size=1, max_size=40), st.randoms())
def test_joint_permutation_leaves_metrics_unchanged(pairs, rng):
    preds, golds = zip(*pairs)
    before = classification_metrics(list(preds), list(golds))
    shuffled = list(pairs)
    rng.shuffle(shuffled)
    preds2, golds2 = zip(*shuffled)
    after = classification_metrics(list(preds2), list(golds2))
    assert before.macro_f1 == after.macro_f1
    assert before.macro_precision == after.macro_precision
    assert before.accuracy == after.accuracy


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(LABELS, LABELS), min_size=1, max_size=40))
def test_macro_f1_bounded_by_class_f1(pairs):
    preds, golds = zip(*pairs)
    report = classification_metrics(list(preds), list(golds))
    per_class = [m.f1 for m in report.per_class.values()]
    assert min(per_class) - 1e-9 <= report.macro_f1 <= max(per_class) + 1e-9
