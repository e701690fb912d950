"""Independent brute-force confusion-matrix oracle.

Deliberately written against the documented metric conventions without
importing anything from the package: explicit confusion counting per class,
percentages, 0/0 -> 0, macro means over lexicographically sorted gold
classes, micro accuracy. Used to cross-check logictree.metrics bit for bit.
"""

from __future__ import annotations


def confusion(preds, golds, cls):
    tp = fp = fn = 0
    for p, g in zip(preds, golds):
        if p == cls and g == cls:
            tp += 1
        elif p == cls and g != cls:
            fp += 1
        elif p != cls and g == cls:
            fn += 1
    return tp, fp, fn


def prf(tp, fp, fn):
    precision = 100.0 * tp / (tp + fp) if tp + fp else 0.0
    recall = 100.0 * tp / (tp + fn) if tp + fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def brute_force_report(preds, golds):
    classes = sorted(set(golds))
    per_class = {}
    for cls in classes:
        tp, fp, fn = confusion(preds, golds, cls)
        precision, recall, f1 = prf(tp, fp, fn)
        per_class[cls] = {
            "precision": precision,
            "recall": recall,
            "f1": f1,
            "support": tp + fn,
        }
    n = len(classes)
    macro_p = sum(per_class[c]["precision"] for c in classes) / n if n else 0.0
    macro_r = sum(per_class[c]["recall"] for c in classes) / n if n else 0.0
    macro_f = sum(per_class[c]["f1"] for c in classes) / n if n else 0.0
    correct = sum(1 for p, g in zip(preds, golds) if p == g)
    return {
        "per_class": per_class,
        "macro_precision": macro_p,
        "macro_recall": macro_r,
        "macro_f1": macro_f,
        "accuracy": 100.0 * correct / len(golds),
    }
