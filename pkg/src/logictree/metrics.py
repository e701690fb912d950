"""Evaluation metrics and fallacy label unification.

All values are percentages in [0, 100]. Conventions (documented because the
source tables leave them unstated, and relied on by the bit-for-bit oracle
tests): 0/0 precision or recall is 0; per-class F1 is 2pr/(p+r) computed in
percent space; macro values are unweighted means over the classes present
in gold, iterated in lexicographic order; accuracy is micro.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .textualize import FallacyCatalog

logger = logging.getLogger(__name__)

FALLACY = "fallacy"
NO_FALLACY = "no_fallacy"


def build_label_map(catalog: FallacyCatalog) -> dict[str, str]:
    """Alias -> canonical map; canonical names map to themselves."""
    mapping: dict[str, str] = {}
    for name in catalog.definitions:
        mapping[_norm(name)] = name
    for alias, canonical in catalog.aliases.items():
        mapping[_norm(alias)] = canonical
    return mapping


def _norm(name: str) -> str:
    return " ".join(name.lower().split())


def unify_label(name: str, label_map: Mapping[str, str]) -> str:
    """Resolve a fallacy name to its canonical form.

    Case-insensitive and whitespace-normalized; unknown names pass through
    unchanged (logged once per call site at debug level).
    """
    canonical = label_map.get(_norm(name))
    if canonical is None:
        logger.debug("label '%s' not in the unification map; kept as is", name)
        return name
    return canonical


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[str, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float
    total: int
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "per_class": {
                name: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for name, m in self.per_class.items()
            },
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "accuracy": self.accuracy,
            "total": self.total,
            "diagnostics": list(self.diagnostics),
        }


def _safe_div(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def _score_classes(
    preds: Sequence[str], golds: Sequence[str]
) -> tuple[dict[str, ClassMetrics], list[str]]:
    classes = sorted(set(golds))
    per_class: dict[str, ClassMetrics] = {}
    for cls in classes:
        tp = sum(1 for p, g in zip(preds, golds) if p == cls and g == cls)
        fp = sum(1 for p, g in zip(preds, golds) if p == cls and g != cls)
        fn = sum(1 for p, g in zip(preds, golds) if p != cls and g == cls)
        precision = _safe_div(100.0 * tp, tp + fp)
        recall = _safe_div(100.0 * tp, tp + fn)
        f1 = _safe_div(2.0 * precision * recall, precision + recall)
        per_class[cls] = ClassMetrics(precision, recall, f1, support=tp + fn)
    extra = sorted(set(preds) - set(golds))
    return per_class, extra


def _report(preds: Sequence[str], golds: Sequence[str]) -> MetricsReport:
    per_class, extra = _score_classes(preds, golds)
    classes = sorted(per_class)
    macro_p = _safe_div(sum(per_class[c].precision for c in classes), len(classes))
    macro_r = _safe_div(sum(per_class[c].recall for c in classes), len(classes))
    macro_f = _safe_div(sum(per_class[c].f1 for c in classes), len(classes))
    correct = sum(1 for p, g in zip(preds, golds) if p == g)
    diagnostics = tuple(
        f"predicted-only class '{cls}' excluded from macro averages" for cls in extra
    )
    return MetricsReport(
        per_class=per_class,
        macro_precision=macro_p,
        macro_recall=macro_r,
        macro_f1=macro_f,
        accuracy=100.0 * correct / len(golds),
        total=len(golds),
        diagnostics=diagnostics,
    )


def detection_metrics(preds: Sequence[str], golds: Sequence[str]) -> MetricsReport:
    """Binary fallacy detection: P/R/F1 of the fallacy class plus accuracy."""
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} preds vs {len(golds)} golds")
    if not golds:
        raise ValueError("empty input")
    allowed = {FALLACY, NO_FALLACY}
    bad = sorted({x for x in (*preds, *golds) if x not in allowed})
    if bad:
        raise ValueError(f"detection labels must be in {sorted(allowed)}; got {bad}")
    return _report(preds, golds)


def classification_metrics(
    preds: Sequence[str],
    golds: Sequence[str],
    label_map: Optional[Mapping[str, str]] = None,
) -> MetricsReport:
    """Multi-class fallacy classification: macro P/R/F1 plus accuracy.

    Both sides are unified through ``label_map`` before scoring. Classes that
    appear only in predictions are excluded from the macro averages and
    surfaced in the report diagnostics.
    """
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} preds vs {len(golds)} golds")
    if not golds:
        raise ValueError("empty input")
    if label_map is not None:
        preds = [unify_label(p, label_map) for p in preds]
        golds = [unify_label(g, label_map) for g in golds]
    return _report(preds, golds)
