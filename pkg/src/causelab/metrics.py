"""Accuracy and score-class metrics for multilabel ID-set predictions."""

from __future__ import annotations

import numpy as np

from .validation import check_fraction

GOOD = "Good"
FAIR = "Fair"
POOR = "Poor"
SCORE_CLASSES = (GOOD, FAIR, POOR)


def _as_id_sets(values) -> list[frozenset[int]]:
    if isinstance(values, np.ndarray) and values.ndim == 2:
        return [frozenset(np.nonzero(row)[0].tolist()) for row in values]
    return [frozenset(item) for item in values]


def exact_match_accuracy(predictions, truths) -> float:
    """Fraction of positions whose predicted ID set equals the true set exactly.

    Accepts parallel sequences of ID sets or 2-D indicator matrices; an empty
    prediction matching an empty truth counts as correct.
    """
    pred = _as_id_sets(predictions)
    true = _as_id_sets(truths)
    if len(pred) != len(true):
        raise ValueError(f"length mismatch: {len(pred)} predictions vs {len(true)} truths")
    if not pred:
        raise ValueError("cannot score an empty prediction list")
    hits = sum(p == t for p, t in zip(pred, true))
    return hits / len(pred)


def score_class(accuracy: float) -> str:
    """Good for accuracy >= 0.90, Fair for >= 0.70, Poor otherwise."""
    accuracy = check_fraction("accuracy", accuracy)
    if accuracy >= 0.90:
        return GOOD
    if accuracy >= 0.70:
        return FAIR
    return POOR
