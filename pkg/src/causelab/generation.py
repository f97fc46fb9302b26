"""Seeded random generation of causation sets and labeled instance datasets.

Everything here is a deterministic function of (params, seed): the same seed
reproduces the same causations, streams, and datasets on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import CausationSpaceExhaustedError, InfeasibleParametersError
from .matching import Causation, label_instance, membership_matrix
from .params import Params

CAUSATION_ATTEMPT_CAP = 10_000
REJECTION_CAP = 100_000
_BATCH = 512


def make_rng(seed) -> np.random.Generator:
    """Deterministic generator: one seed, one reproducible stream."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Instance:
    """A fixed-length event sequence plus the causation IDs it contains."""

    events: tuple[int, ...]
    causation_ids: frozenset[int]

    @property
    def is_valid(self) -> bool:
        return bool(self.causation_ids)


@dataclass(frozen=True)
class Dataset:
    """A labeled collection of instances for one causation set."""

    params: Params
    causations: tuple[Causation, ...]
    instances: tuple[Instance, ...]
    split_tag: str  # "train" or "test"

    def __len__(self) -> int:
        return len(self.instances)

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y): event matrix (n, length) and label indicator (n, num_causations)."""
        n = len(self.instances)
        X = np.zeros((n, self.params.instance_length), dtype=np.int64)
        Y = np.zeros((n, len(self.causations)), dtype=np.int64)
        for i, inst in enumerate(self.instances):
            X[i] = inst.events
            for cid in inst.causation_ids:
                Y[i, cid] = 1
        return X, Y


def generate_causations(params: Params, rng: np.random.Generator) -> list[Causation]:
    """Draw ``num_causations`` distinct cause multisets.

    Sizes are uniform on [1, max_cause_events]; event types uniform with
    replacement. Duplicates (as multisets) are redrawn; sub-multisets of one
    another are allowed.
    """
    seen: set[tuple[int, ...]] = set()
    out: list[Causation] = []
    attempts = 0
    while len(out) < params.num_causations:
        if attempts >= CAUSATION_ATTEMPT_CAP:
            raise CausationSpaceExhaustedError("causation space exhausted")
        attempts += 1
        size = int(rng.integers(1, params.max_cause_events + 1))
        events = tuple(sorted(
            int(e) for e in rng.integers(0, params.num_event_types, size=size)
        ))
        if events in seen:
            continue
        seen.add(events)
        out.append(Causation(id=len(out), events=events))
    return out


def generate_stream(params: Params, rng: np.random.Generator) -> tuple[int, ...]:
    """One random event stream: ``instance_length`` uniform independent draws."""
    return tuple(
        int(e) for e in rng.integers(0, params.num_event_types, size=params.instance_length)
    )


def _labeled_batch(params, causations, rng):
    X = rng.integers(0, params.num_event_types, size=(_BATCH, params.instance_length))
    member = membership_matrix(
        X, causations, params.max_intervening_events, params.num_event_types
    )
    ids = np.array([c.id for c in causations])
    return X.tolist(), member, ids


def generate_training_set(
    params: Params,
    causations: Sequence[Causation],
    n_valid: int,
    n_invalid: int,
    rng: np.random.Generator,
) -> Dataset:
    """Rejection-sample labeled streams until the class quotas are met.

    Streams are drawn unconditioned, labeled against ``causations``, and kept
    when their class (valid = at least one causation) is still needed. The
    result is shuffled. More than `REJECTION_CAP` consecutive rejections aborts
    with "infeasible parameters" instead of hanging on degenerate corners.
    """
    if n_valid < 0 or n_invalid < 0:
        raise ValueError("instance counts must be >= 0")
    valid: list[Instance] = []
    invalid: list[Instance] = []
    rejects = 0
    while len(valid) < n_valid or len(invalid) < n_invalid:
        rows, member, ids = _labeled_batch(params, causations, rng)
        for row, hits in zip(rows, member):
            is_valid = bool(hits.any())
            if is_valid and len(valid) < n_valid:
                valid.append(Instance(tuple(row), frozenset(ids[hits].tolist())))
                rejects = 0
            elif not is_valid and len(invalid) < n_invalid:
                invalid.append(Instance(tuple(row), frozenset()))
                rejects = 0
            else:
                rejects += 1
                if rejects > REJECTION_CAP:
                    raise InfeasibleParametersError("infeasible parameters")
            if len(valid) >= n_valid and len(invalid) >= n_invalid:
                break
    instances = valid + invalid
    order = rng.permutation(len(instances))
    return Dataset(
        params=params,
        causations=tuple(causations),
        instances=tuple(instances[i] for i in order),
        split_tag="train",
    )


def generate_test_set(
    params: Params,
    causations: Sequence[Causation],
    n: int,
    rng: np.random.Generator,
) -> Dataset:
    """``n`` unconditioned random streams labeled with ground truth.

    No rejection: the valid/invalid balance falls where it may.
    """
    if n < 0:
        raise ValueError("instance counts must be >= 0")
    if n == 0:
        return Dataset(params, tuple(causations), (), "test")
    X = rng.integers(0, params.num_event_types, size=(n, params.instance_length))
    member = membership_matrix(
        X, causations, params.max_intervening_events, params.num_event_types
    )
    ids = np.array([c.id for c in causations])
    instances = tuple(
        Instance(tuple(row), frozenset(ids[hits].tolist()))
        for row, hits in zip(X.tolist(), member)
    )
    return Dataset(params, tuple(causations), instances, "test")


def verify_labels(dataset: Dataset) -> bool:
    """Re-derive every instance's causation IDs; True when stored labels match."""
    gap = dataset.params.max_intervening_events
    return all(
        label_instance(inst.events, dataset.causations, gap) == inst.causation_ids
        for inst in dataset.instances
    )
