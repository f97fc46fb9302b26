"""Single-hidden-layer perceptron baseline, trained from scratch with Adam.

Input encoding is positional: one indicator per (event type, step) pair, so an
instance of length L over T event types becomes a binary vector of length
T * L. Output is one sigmoid per causation ID, trained with mean binary
cross-entropy over all outputs and thresholded into an ID set at prediction
time. All arithmetic is double precision; gradients are exact backpropagation
and are checked against central finite differences in `gradient_check`.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .exceptions import TrainingDivergedError
from .generation import Dataset, make_rng
from .params import Params
from .validation import check_count, check_event_matrix, check_label_indicator


def encode_event_matrix(X: np.ndarray, num_event_types: int) -> np.ndarray:
    """Binary (n, num_event_types * length) matrix; entry (i, t*length + s) is 1
    when row i carries event type t at step s."""
    X = np.asarray(X)
    n, length = X.shape
    out = np.zeros((n, num_event_types * length), dtype=np.float64)
    if n:
        cols = X * length + np.arange(length)[None, :]
        out[np.arange(n)[:, None], cols] = 1.0
    return out


def encode_instance(events: Sequence[int], params: Params) -> np.ndarray:
    """Step-occurrence encoding of one instance under ``params``."""
    X = check_event_matrix(
        np.asarray(events).reshape(1, -1),
        instance_length=params.instance_length,
        num_event_types=params.num_event_types,
    )
    return encode_event_matrix(X, params.num_event_types)[0]


def encode_labels(causation_ids: Iterable[int], num_causations: int) -> np.ndarray:
    """Multiple-hot vector of length ``num_causations``."""
    vec = np.zeros(num_causations, dtype=np.float64)
    for cid in causation_ids:
        if not 0 <= cid < num_causations:
            raise ValueError(f"causation id {cid} out of range [0, {num_causations})")
        vec[cid] = 1.0
    return vec


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def init_weights(
    input_dim: int, hidden_units: int, n_outputs: int, rng: np.random.Generator
) -> dict[str, np.ndarray]:
    """Symmetric uniform weights scaled by fan-in plus fan-out; zero biases."""
    lim1 = np.sqrt(6.0 / (input_dim + hidden_units))
    lim2 = np.sqrt(6.0 / (hidden_units + n_outputs))
    return {
        "w1": rng.uniform(-lim1, lim1, size=(input_dim, hidden_units)),
        "b1": np.zeros(hidden_units),
        "w2": rng.uniform(-lim2, lim2, size=(hidden_units, n_outputs)),
        "b2": np.zeros(n_outputs),
    }


def forward_loss(weights: Mapping[str, np.ndarray], inputs: np.ndarray, targets: np.ndarray) -> float:
    """Mean binary cross-entropy over all outputs, computed from logits.

    The log1p form never evaluates log(0), so the loss stays finite for any
    finite logits.
    """
    z1 = inputs @ weights["w1"] + weights["b1"]
    hidden = np.maximum(z1, 0.0)
    z2 = hidden @ weights["w2"] + weights["b2"]
    per_output = np.maximum(z2, 0.0) - z2 * targets + np.log1p(np.exp(-np.abs(z2)))
    return float(per_output.mean())


def forward_backward(
    weights: Mapping[str, np.ndarray], inputs: np.ndarray, targets: np.ndarray
) -> tuple[float, dict[str, np.ndarray]]:
    """Loss plus exact gradients of the mean binary cross-entropy."""
    z1 = inputs @ weights["w1"] + weights["b1"]
    hidden = np.maximum(z1, 0.0)
    z2 = hidden @ weights["w2"] + weights["b2"]
    per_output = np.maximum(z2, 0.0) - z2 * targets + np.log1p(np.exp(-np.abs(z2)))
    loss = float(per_output.mean())
    dz2 = (_sigmoid(z2) - targets) / z2.size
    dhidden = dz2 @ weights["w2"].T
    dz1 = np.where(z1 > 0.0, dhidden, 0.0)
    grads = {
        "w1": inputs.T @ dz1,
        "b1": dz1.sum(axis=0),
        "w2": hidden.T @ dz2,
        "b2": dz2.sum(axis=0),
    }
    return loss, grads


def adam_step(
    weights: dict[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    m: dict[str, np.ndarray],
    v: dict[str, np.ndarray],
    t: int,
    learning_rate: float,
    beta1: float,
    beta2: float,
    epsilon: float,
) -> int:
    """One Adam update over every parameter, in place. Returns the new step count."""
    t += 1
    bias1 = 1.0 - beta1**t
    bias2 = 1.0 - beta2**t
    for key, g in grads.items():
        m[key] = beta1 * m[key] + (1.0 - beta1) * g
        v[key] = beta2 * v[key] + (1.0 - beta2) * g * g
        weights[key] -= learning_rate * (m[key] / bias1) / (np.sqrt(v[key] / bias2) + epsilon)
    return t


def gradient_check(
    model_or_weights,
    inputs: np.ndarray,
    targets: np.ndarray,
    step: float = 1e-5,
) -> float:
    """Maximum relative discrepancy between analytic and numerical gradients.

    Every partial derivative is compared against the central difference
    (f(w+step) - f(w-step)) / (2*step); the relative error is
    |a - n| / max(|a|, |n|, 1e-12).
    """
    if isinstance(model_or_weights, MlpCausationClassifier):
        weights = model_or_weights.weights_
    else:
        weights = dict(model_or_weights)
    inputs = np.asarray(inputs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    _, grads = forward_backward(weights, inputs, targets)
    worst = 0.0
    for key, w in weights.items():
        flat = w.ravel()
        gflat = grads[key].ravel()
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + step
            up = forward_loss(weights, inputs, targets)
            flat[i] = orig - step
            down = forward_loss(weights, inputs, targets)
            flat[i] = orig
            numeric = (up - down) / (2.0 * step)
            analytic = gflat[i]
            denom = max(abs(analytic), abs(numeric), 1e-12)
            worst = max(worst, abs(analytic - numeric) / denom)
    return worst


class MlpCausationClassifier(BaseEstimator, ClassifierMixin):
    """Non-recurrent baseline: 128-unit hidden layer, sigmoid multiple-hot
    output, mean binary cross-entropy, full-batch Adam for a fixed number of
    epochs.

    Parameters
    ----------
    num_event_types : int, optional
        Alphabet size; inferred from the training data when omitted.
    hidden_units : int, default 128
    epochs : int, default 500
    learning_rate : float, default 0.001
    adam_beta1, adam_beta2, adam_epsilon : floats
        Standard published Adam defaults.
    prediction_threshold : float, default 0.5
        Sigmoid outputs >= threshold become predicted IDs.
    seed : int, default 0
        Controls weight initialization; fixes the whole loss trace.

    Attributes
    ----------
    w1_, b1_, w2_, b2_ : ndarray
        Fitted weights.
    loss_curve_ : list of float
        Loss at the start of each epoch.
    final_loss_ : float
        Loss of the fitted weights on the training batch.
    """

    def __init__(
        self,
        num_event_types: int | None = None,
        hidden_units: int = 128,
        epochs: int = 500,
        learning_rate: float = 0.001,
        adam_beta1: float = 0.9,
        adam_beta2: float = 0.999,
        adam_epsilon: float = 1e-8,
        prediction_threshold: float = 0.5,
        seed: int = 0,
    ):
        self.num_event_types = num_event_types
        self.hidden_units = hidden_units
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.adam_beta1 = adam_beta1
        self.adam_beta2 = adam_beta2
        self.adam_epsilon = adam_epsilon
        self.prediction_threshold = prediction_threshold
        self.seed = seed

    def _check_config(self):
        check_count("epochs", self.epochs, minimum=1)
        check_count("hidden_units", self.hidden_units, minimum=1)
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")
        if not 0.0 < self.prediction_threshold < 1.0:
            raise ValueError("prediction_threshold must lie in (0, 1)")

    def fit(self, X, y):
        self._check_config()
        X = check_event_matrix(X, num_event_types=self.num_event_types)
        Y = check_label_indicator(y, n_samples=X.shape[0]).astype(np.float64)
        if X.shape[0] == 0:
            raise ValueError("training set is empty")
        if self.num_event_types is not None:
            self.num_event_types_ = self.num_event_types
        else:
            self.num_event_types_ = int(X.max()) + 1
        self.n_features_in_ = X.shape[1]
        self.n_outputs_ = Y.shape[1]
        encoded = encode_event_matrix(X, self.num_event_types_)

        rng = make_rng(self.seed)
        weights = init_weights(encoded.shape[1], self.hidden_units, self.n_outputs_, rng)
        m = {k: np.zeros_like(w) for k, w in weights.items()}
        v = {k: np.zeros_like(w) for k, w in weights.items()}
        t = 0
        losses: list[float] = []
        for epoch in range(self.epochs):
            loss, grads = forward_backward(weights, encoded, Y)
            if not np.isfinite(loss):
                raise TrainingDivergedError(f"training diverged at epoch {epoch}")
            losses.append(loss)
            t = adam_step(
                weights, grads, m, v, t,
                self.learning_rate, self.adam_beta1, self.adam_beta2, self.adam_epsilon,
            )
        final = forward_loss(weights, encoded, Y)
        if not np.isfinite(final):
            raise TrainingDivergedError(f"training diverged at epoch {self.epochs}")

        self.w1_ = weights["w1"]
        self.b1_ = weights["b1"]
        self.w2_ = weights["w2"]
        self.b2_ = weights["b2"]
        self.adam_m_ = m
        self.adam_v_ = v
        self.adam_t_ = t
        self.loss_curve_ = losses
        self.final_loss_ = final
        return self

    @property
    def weights_(self) -> dict[str, np.ndarray]:
        return {"w1": self.w1_, "b1": self.b1_, "w2": self.w2_, "b2": self.b2_}

    def predict_proba(self, X) -> np.ndarray:
        """Sigmoid output per causation ID, shape (n, num_causations)."""
        if not hasattr(self, "w1_"):
            raise ValueError("model is not fitted")
        X = check_event_matrix(
            X, instance_length=self.n_features_in_, num_event_types=self.num_event_types_
        )
        encoded = encode_event_matrix(X, self.num_event_types_)
        hidden = np.maximum(encoded @ self.w1_ + self.b1_, 0.0)
        return _sigmoid(hidden @ self.w2_ + self.b2_)

    def predict(self, X) -> np.ndarray:
        """Binary indicator of predicted causation IDs per row."""
        proba = self.predict_proba(X)
        return (proba >= self.prediction_threshold).astype(np.int64)

    def predict_ids(self, events: Sequence[int]) -> set[int]:
        """Predicted causation ID set for a single event sequence."""
        row = self.predict(np.asarray(events).reshape(1, -1))[0]
        return set(np.nonzero(row)[0].tolist())


def train_mlp(train: Dataset, **config) -> MlpCausationClassifier:
    """Fit the baseline on a generated training dataset.

    ``config`` accepts any `MlpCausationClassifier` parameter (epochs,
    learning_rate, seed, ...).
    """
    X, Y = train.to_arrays()
    model = MlpCausationClassifier(
        num_event_types=train.params.num_event_types, **config
    )
    return model.fit(X, Y)


def predict_mlp(model: MlpCausationClassifier, events: Sequence[int]) -> set[int]:
    """Causation IDs the fitted model asserts for one event sequence."""
    return model.predict_ids(events)
