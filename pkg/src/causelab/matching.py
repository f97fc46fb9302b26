"""Gap-constrained multiset matching of cause events inside event sequences.

A causation is *contained* in a sequence when some strictly increasing choice
of positions carries exactly the cause multiset and no two consecutively
chosen positions are separated by more than ``max_gap`` other events. One
satisfying embedding is enough, no matter how many other embeddings violate
the gap rule.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import EmptyCausationError, OracleBoundExceededError

ORACLE_MAX_EVENTS = 20
ORACLE_MAX_CAUSES = 4


@dataclass(frozen=True)
class Causation:
    """An identified conjunction of cause events; order-free, with multiplicity.

    ``events`` is stored sorted so that two causations are equal exactly when
    they are equal as multisets.
    """

    id: int
    events: tuple[int, ...]

    def __post_init__(self):
        if len(self.events) == 0:
            raise EmptyCausationError("empty causation")
        object.__setattr__(self, "events", tuple(sorted(int(e) for e in self.events)))


def contains_causation(events: Sequence[int], causes: Iterable[int], max_gap: int) -> bool:
    """True when ``causes`` embeds into ``events`` under the gap rule.

    An embedding is a strictly increasing choice of positions whose events form
    exactly the multiset ``causes``; consecutive chosen positions may be
    separated by at most ``max_gap`` intervening events. The first and last
    chosen positions are unconstrained by the rule.
    """
    causes = tuple(causes)
    if not causes:
        raise EmptyCausationError("empty causation")
    if max_gap < 0:
        raise ValueError("max_gap must be >= 0")
    events = tuple(events)
    need = Counter(causes)
    have = Counter(events)
    if any(have[e] < m for e, m in need.items()):
        return False
    n = len(events)

    def search(last: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        stop = n if last < 0 else min(n, last + max_gap + 2)
        for pos in range(last + 1, stop):
            e = events[pos]
            if need[e] > 0:
                need[e] -= 1
                found = search(pos, remaining - 1)
                need[e] += 1
                if found:
                    return True
        return False

    return search(-1, len(causes))


def min_max_gap(events: Sequence[int], causes: Iterable[int]) -> int | None:
    """Smallest achievable worst gap over all embeddings of ``causes``.

    Every embedding has a largest consecutive-position gap; this returns the
    minimum of that value over embeddings, or None when no embedding exists.
    A single-event cause that appears scores 0: with no consecutive pair the
    gap rule is vacuous.
    """
    causes = tuple(causes)
    if not causes:
        raise EmptyCausationError("empty causation")
    events = tuple(events)
    need = Counter(causes)
    have = Counter(events)
    if any(have[e] < m for e, m in need.items()):
        return None
    if len(causes) == 1:
        return 0
    n = len(events)
    best: int | None = None

    def search(last: int, remaining: int, worst: int):
        nonlocal best
        if remaining == 0:
            best = worst
            return
        for pos in range(last + 1, n):
            e = events[pos]
            if need[e] > 0:
                gap = 0 if last < 0 else pos - last - 1
                candidate = worst if gap <= worst else gap
                if best is None or candidate < best:
                    need[e] -= 1
                    search(pos, remaining - 1, candidate)
                    need[e] += 1

    search(-1, len(causes), 0)
    return best


def label_instance(events: Sequence[int], causations: Sequence[Causation], max_gap: int) -> frozenset[int]:
    """IDs of the causations whose cause multiset embeds in ``events``."""
    return frozenset(
        c.id for c in causations if contains_causation(events, c.events, max_gap)
    )


def brute_force_contains(events: Sequence[int], causes: Iterable[int], max_gap: int) -> bool:
    """Exhaustive reference matcher: tries every position subset directly.

    Deliberately naive; `contains_causation` is validated against it. Bounded
    to |events| <= 20 and |causes| <= 4 to keep enumeration tractable.
    """
    causes = tuple(causes)
    if not causes:
        raise EmptyCausationError("empty causation")
    events = tuple(events)
    if len(events) > ORACLE_MAX_EVENTS or len(causes) > ORACLE_MAX_CAUSES:
        raise OracleBoundExceededError("oracle bound exceeded")
    target = sorted(causes)
    for positions in itertools.combinations(range(len(events)), len(target)):
        if sorted(events[p] for p in positions) != target:
            continue
        if all(q - p - 1 <= max_gap for p, q in zip(positions, positions[1:])):
            return True
    return False


def count_matrix(X: np.ndarray, num_event_types: int) -> np.ndarray:
    """Per-row event-type occurrence counts for a batch of sequences.

    X is (n, length) with entries in [0, num_event_types); the result is
    (n, num_event_types).
    """
    X = np.asarray(X)
    n = X.shape[0]
    if n == 0:
        return np.zeros((0, num_event_types), dtype=np.int64)
    offsets = np.arange(n, dtype=np.int64) * num_event_types
    flat = (X + offsets[:, None]).ravel()
    return np.bincount(flat, minlength=n * num_event_types).reshape(n, num_event_types)


def contains_batch(
    X: np.ndarray,
    causes: Iterable[int],
    max_gap: int,
    counts: np.ndarray | None = None,
) -> np.ndarray:
    """Vectorized `contains_causation` over the rows of X.

    The multiset count filter is exact for single-event causes and whenever the
    gap rule cannot bind (max_gap >= row length - 2); only survivors of the
    filter fall back to the positional search. ``counts`` may be supplied to
    share one `count_matrix` across several causations.
    """
    causes = tuple(causes)
    if not causes:
        raise EmptyCausationError("empty causation")
    if max_gap < 0:
        raise ValueError("max_gap must be >= 0")
    X = np.asarray(X)
    n, length = X.shape
    if n == 0:
        return np.zeros(0, dtype=bool)
    if counts is None:
        width = max(int(X.max()) + 1, max(causes) + 1)
        counts = count_matrix(X, width)
    need = Counter(causes)
    types = np.fromiter(need.keys(), dtype=np.int64)
    if types.max() >= counts.shape[1]:
        return np.zeros(n, dtype=bool)
    mults = np.fromiter(need.values(), dtype=np.int64)
    mask = (counts[:, types] >= mults).all(axis=1)
    if len(causes) == 1 or max_gap >= length - 2:
        return mask
    out = np.zeros(n, dtype=bool)
    hits = np.nonzero(mask)[0]
    for i, row in zip(hits, X[hits].tolist()):
        out[i] = contains_causation(row, causes, max_gap)
    return out


def membership_matrix(
    X: np.ndarray,
    causations: Sequence[Causation],
    max_gap: int,
    num_event_types: int | None = None,
) -> np.ndarray:
    """Boolean matrix (n, len(causations)): which causation embeds in which row.

    Columns follow the order of ``causations``, not their IDs.
    """
    X = np.asarray(X)
    n = X.shape[0]
    if num_event_types is None:
        num_event_types = max(
            int(X.max()) + 1 if X.size else 1,
            max(max(c.events) for c in causations) + 1,
        )
    counts = count_matrix(X, num_event_types)
    out = np.zeros((n, len(causations)), dtype=bool)
    for j, c in enumerate(causations):
        out[:, j] = contains_batch(X, c.events, max_gap, counts=counts)
    return out


def label_batch(
    X: np.ndarray,
    causations: Sequence[Causation],
    max_gap: int,
    num_event_types: int | None = None,
) -> list[frozenset[int]]:
    """`label_instance` applied to every row of X."""
    member = membership_matrix(X, causations, max_gap, num_event_types)
    ids = [c.id for c in causations]
    return [
        frozenset(ids[j] for j in np.nonzero(row)[0]) for row in member
    ]
