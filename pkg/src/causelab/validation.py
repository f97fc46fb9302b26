"""Input validation helpers shared by the estimators and the generator."""

from __future__ import annotations

import numpy as np

from .exceptions import UnknownEventTypeError


def check_event_matrix(
    X,
    instance_length: int | None = None,
    num_event_types: int | None = None,
) -> np.ndarray:
    """Coerce X to a 2-D int64 array of event sequences and range-check it.

    A single 1-D sequence is promoted to one row.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array of event sequences, got ndim={X.ndim}")
    if X.size and not np.issubdtype(X.dtype, np.integer):
        rounded = np.rint(X)
        if not np.array_equal(rounded, X):
            raise ValueError("event values must be integers")
        X = rounded
    X = X.astype(np.int64, copy=False)
    if instance_length is not None and X.shape[1] != instance_length:
        raise ValueError(
            f"dimension mismatch: expected sequences of length {instance_length}, "
            f"got {X.shape[1]}"
        )
    if X.size:
        low = int(X.min())
        high = int(X.max())
        if low < 0:
            raise UnknownEventTypeError(f"unknown event type {low}")
        if num_event_types is not None and high >= num_event_types:
            raise UnknownEventTypeError(
                f"unknown event type {high} (alphabet size {num_event_types})"
            )
    return X


def check_label_indicator(
    y,
    n_samples: int | None = None,
    num_causations: int | None = None,
) -> np.ndarray:
    """Coerce y to a 2-D binary indicator matrix (one column per causation ID)."""
    Y = np.asarray(y)
    if Y.ndim != 2:
        raise ValueError(f"expected a 2-D multilabel indicator matrix, got ndim={Y.ndim}")
    if Y.size and not np.isin(Y, (0, 1)).all():
        raise ValueError("label indicator entries must be 0 or 1")
    Y = Y.astype(np.int64, copy=False)
    if n_samples is not None and Y.shape[0] != n_samples:
        raise ValueError(f"X and y disagree on sample count: {n_samples} vs {Y.shape[0]}")
    if num_causations is not None and Y.shape[1] != num_causations:
        raise ValueError(
            f"dimension mismatch: expected {num_causations} label columns, got {Y.shape[1]}"
        )
    return Y


def check_count(name: str, value, minimum: int = 0) -> int:
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_fraction(name: str, value) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} out of range [0, 1]: {value}")
    return value
