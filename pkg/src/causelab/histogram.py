"""Histogram causation learner.

Per-causation event-type counts over positive training instances yield the
cause multiset by intersection: true cause events appear in every positive at
full multiplicity, while coincidental events drop out as positives accumulate.
The gap bound is estimated by observing, across positives, the largest gap the
best embedding needs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .exceptions import InconsistentPositivesError, NoPositiveInstancesError
from .generation import Dataset
from .matching import contains_batch, count_matrix, min_max_gap
from .validation import check_event_matrix, check_label_indicator


def estimate_cause_multiset(
    positive_instances: Iterable[Sequence[int]],
    num_event_types: int | None = None,
) -> tuple[int, ...]:
    """Multiset intersection of the positives.

    Each event type keeps the minimum count it attains across the instances;
    types that miss any instance are eliminated.
    """
    X = np.asarray(list(positive_instances))
    if X.shape[0] == 0:
        raise NoPositiveInstancesError("no positive instances")
    X = check_event_matrix(X, num_event_types=num_event_types)
    width = num_event_types if num_event_types is not None else int(X.max()) + 1
    mins = count_matrix(X, width).min(axis=0)
    return tuple(np.repeat(np.arange(width), mins).tolist())


def estimate_intervening_max(
    positive_instances: Iterable[Sequence[int]],
    learned_causes: Sequence[int],
) -> int:
    """Largest gap any positive needs to embed ``learned_causes``.

    This is the tightest bound consistent with everything observed: each
    positive is summarized by its most-compact embedding (`min_max_gap`), and
    the maximum over positives is returned.
    """
    instances = list(positive_instances)
    if not instances:
        raise NoPositiveInstancesError("no positive instances")
    worst = 0
    for events in instances:
        gap = min_max_gap(events, learned_causes)
        if gap is None:
            raise InconsistentPositivesError("inconsistent positives")
        if gap > worst:
            worst = gap
    return worst


class HistogramCausationLearner(BaseEstimator, ClassifierMixin):
    """Multilabel classifier over event sequences using count intersection.

    Fit on an event matrix X of shape (n, length) and a binary indicator Y of
    shape (n, num_causations): column ``c`` of Y marks the positives of
    causation ID ``c``. Causations with no positives are unlearnable and are
    never predicted.

    Parameters
    ----------
    num_event_types : int, optional
        Alphabet size; inferred from the training data when omitted.

    Attributes
    ----------
    causes_ : list of tuple
        Learned cause multiset per causation ID; empty when unlearnable.
    max_gaps_ : list of int
        Learned maximum-intervening-events bound per causation ID.
    positives_seen_ : list of int
        Number of positive instances observed per causation ID.
    learnable_ : ndarray of bool
    """

    def __init__(self, num_event_types: int | None = None):
        self.num_event_types = num_event_types

    def fit(self, X, y):
        X = check_event_matrix(X, num_event_types=self.num_event_types)
        Y = check_label_indicator(y, n_samples=X.shape[0])
        if self.num_event_types is not None:
            self.num_event_types_ = self.num_event_types
        else:
            self.num_event_types_ = int(X.max()) + 1 if X.size else 1
        self.n_features_in_ = X.shape[1]
        self.n_outputs_ = Y.shape[1]
        causes: list[tuple[int, ...]] = []
        gaps: list[int] = []
        seen: list[int] = []
        for c in range(self.n_outputs_):
            pos = X[Y[:, c] == 1]
            seen.append(pos.shape[0])
            if pos.shape[0] == 0:
                causes.append(())
                gaps.append(0)
                continue
            multiset = estimate_cause_multiset(pos, self.num_event_types_)
            if not multiset:
                # Only reachable with contradictory hand-made labels; treated
                # as unlearnable rather than an error.
                causes.append(())
                gaps.append(0)
                continue
            causes.append(multiset)
            gaps.append(estimate_intervening_max(pos, multiset))
        self.causes_ = causes
        self.max_gaps_ = gaps
        self.positives_seen_ = seen
        self.learnable_ = np.array([bool(c) for c in causes])
        return self

    def predict(self, X) -> np.ndarray:
        """Binary indicator of predicted causation IDs per row."""
        if not hasattr(self, "causes_"):
            raise ValueError("model is not fitted")
        X = check_event_matrix(X, num_event_types=self.num_event_types_)
        counts = count_matrix(X, self.num_event_types_)
        out = np.zeros((X.shape[0], self.n_outputs_), dtype=np.int64)
        for c in range(self.n_outputs_):
            if self.learnable_[c]:
                out[:, c] = contains_batch(
                    X, self.causes_[c], self.max_gaps_[c], counts=counts
                )
        return out

    def predict_ids(self, events: Sequence[int]) -> set[int]:
        """Predicted causation ID set for a single event sequence."""
        row = self.predict(np.asarray(events).reshape(1, -1))[0]
        return set(np.nonzero(row)[0].tolist())


def train_histogram(train: Dataset) -> HistogramCausationLearner:
    """Fit the histogram learner on a generated training dataset."""
    X, Y = train.to_arrays()
    model = HistogramCausationLearner(num_event_types=train.params.num_event_types)
    return model.fit(X, Y)


def predict_histogram(model: HistogramCausationLearner, events: Sequence[int]) -> set[int]:
    """Causation IDs the fitted model asserts for one event sequence."""
    return model.predict_ids(events)
