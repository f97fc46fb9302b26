"""CART-style decision tree over sweep parameters.

Splits use Gini impurity with midpoint thresholds between consecutive observed
feature values. Ties are broken deterministically: first by feature order,
then by smaller threshold. A node stops splitting when it is pure, when no
candidate threshold exists (all feature values identical), or at ``max_depth``;
zero-gain splits are otherwise accepted, which is what lets the tree reach
zero training error on separable rows.

The fitted tree renders to the indented ``|---`` text format and parses back
from it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .metrics import SCORE_CLASSES

FEATURE_NAMES = (
    "NUM_EVENT_TYPES",
    "NUM_CAUSATIONS",
    "MAX_CAUSE_EVENTS",
    "MAX_INTERVENING_EVENTS",
)

_GAIN_TOL = 1e-12


@dataclass
class TreeNode:
    """One node: either a threshold split on a feature or a leaf."""

    n_samples: int
    class_counts: tuple[int, ...]
    majority: str
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


def _gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - (p * p).sum())


class ScoreTree(BaseEstimator, ClassifierMixin):
    """Decision tree mapping parameter combinations to score classes.

    Parameters
    ----------
    max_depth : int, optional
        Depth bound; None grows until purity or inseparability.
    feature_names : tuple of str
        Names used in the rendered text, in column order.
    class_labels : tuple of str
        Class order for count vectors and majority tie-breaking.
    """

    def __init__(
        self,
        max_depth: int | None = None,
        feature_names: Sequence[str] = FEATURE_NAMES,
        class_labels: Sequence[str] = SCORE_CLASSES,
    ):
        self.max_depth = max_depth
        self.feature_names = feature_names
        self.class_labels = class_labels

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError("X must be 2-D (one row per parameter combination)")
        if X.shape[0] == 0:
            raise ValueError("cannot fit a tree on zero rows")
        if X.shape[1] != len(self.feature_names):
            raise ValueError(
                f"expected {len(self.feature_names)} feature columns, got {X.shape[1]}"
            )
        label_index = {label: i for i, label in enumerate(self.class_labels)}
        try:
            y_idx = np.array([label_index[label] for label in y], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"unknown class label: {exc.args[0]!r}") from None
        if len(y_idx) != X.shape[0]:
            raise ValueError("X and y disagree on row count")
        self.n_features_in_ = X.shape[1]
        self.root_ = self._build(X, y_idx, depth=0)
        return self

    def _leaf(self, counts: np.ndarray, n: int) -> TreeNode:
        majority = self.class_labels[int(np.argmax(counts))]
        return TreeNode(n_samples=n, class_counts=tuple(int(c) for c in counts), majority=majority)

    def _build(self, X, y_idx, depth) -> TreeNode:
        n = X.shape[0]
        counts = np.bincount(y_idx, minlength=len(self.class_labels))
        node = self._leaf(counts, n)
        if (counts > 0).sum() <= 1:
            return node
        if self.max_depth is not None and depth >= self.max_depth:
            return node
        parent = _gini(counts)
        best_gain = -1.0
        best: tuple[int, float, np.ndarray] | None = None
        for f in range(X.shape[1]):
            values = np.unique(X[:, f])
            for threshold in (values[:-1] + values[1:]) / 2.0:
                mask = X[:, f] <= threshold
                n_left = int(mask.sum())
                left_counts = np.bincount(y_idx[mask], minlength=len(self.class_labels))
                right_counts = counts - left_counts
                gain = parent - (
                    n_left / n * _gini(left_counts)
                    + (n - n_left) / n * _gini(right_counts)
                )
                if gain > best_gain + _GAIN_TOL:
                    best_gain = gain
                    best = (f, float(threshold), mask)
        if best is None:
            return node
        f, threshold, mask = best
        node.feature = f
        node.threshold = threshold
        node.left = self._build(X[mask], y_idx[mask], depth + 1)
        node.right = self._build(X[~mask], y_idx[~mask], depth + 1)
        return node

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "root_"):
            raise ValueError("tree is not fitted")
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        out = []
        for row in X:
            node = self.root_
            while not node.is_leaf:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out.append(node.majority)
        return np.asarray(out, dtype=object)

    def export_text(self) -> str:
        if not hasattr(self, "root_"):
            raise ValueError("tree is not fitted")
        return render_tree_text(self.root_, self.feature_names)


def fit_score_tree(rows, classes, max_depth: int | None = None) -> ScoreTree:
    """Fit a `ScoreTree` on (NET, NC, MCE, MIE) rows and their score classes."""
    return ScoreTree(max_depth=max_depth).fit(np.asarray(rows), list(classes))


def render_tree_text(node: TreeNode, feature_names: Sequence[str] = FEATURE_NAMES) -> str:
    """Indented text rendering: internal nodes as ``|--- NAME <= T`` / ``> T``
    pairs (thresholds to two decimals), leaves as ``|--- class: X``."""
    lines: list[str] = []

    def walk(nd: TreeNode, depth: int):
        pad = "|   " * depth
        if nd.is_leaf:
            lines.append(f"{pad}|--- class: {nd.majority}")
            return
        name = feature_names[nd.feature]
        lines.append(f"{pad}|--- {name} <= {nd.threshold:.2f}")
        walk(nd.left, depth + 1)
        lines.append(f"{pad}|--- {name} > {nd.threshold:.2f}")
        walk(nd.right, depth + 1)

    walk(node, 0)
    return "\n".join(lines) + "\n"


_LINE_RE = re.compile(
    r"^(?P<pad>(?:\|   )*)\|--- (?:class: (?P<cls>\w+)"
    r"|(?P<name>[A-Za-z0-9_]+) (?P<op><=|>) (?P<thr>-?\d+(?:\.\d+)?))$"
)


def parse_tree_text(text: str, feature_names: Sequence[str] = FEATURE_NAMES) -> TreeNode:
    """Parse a rendered tree back into a structural `TreeNode`.

    Sample counts are not present in the text, so parsed nodes carry zeroed
    counts; split structure and leaf classes round-trip exactly.
    """
    parsed = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        match = _LINE_RE.match(raw)
        if match is None:
            raise ValueError(f"line {lineno}: not a tree line: {raw!r}")
        depth = len(match.group("pad")) // 4
        parsed.append((lineno, depth, match))

    pos = 0

    def build(depth: int) -> TreeNode:
        nonlocal pos
        if pos >= len(parsed):
            raise ValueError("unexpected end of tree text")
        lineno, d, match = parsed[pos]
        if d != depth:
            raise ValueError(f"line {lineno}: expected depth {depth}, got {d}")
        pos += 1
        if match.group("cls"):
            return TreeNode(n_samples=0, class_counts=(), majority=match.group("cls"))
        if match.group("op") != "<=":
            raise ValueError(f"line {lineno}: expected a '<=' branch first")
        name = match.group("name")
        if name not in feature_names:
            raise ValueError(f"line {lineno}: unknown feature {name!r}")
        threshold = float(match.group("thr"))
        left = build(depth + 1)
        if pos >= len(parsed):
            raise ValueError(f"line {lineno}: missing '>' branch")
        lineno2, d2, match2 = parsed[pos]
        if (
            d2 != depth
            or match2.group("op") != ">"
            or match2.group("name") != name
            or float(match2.group("thr")) != threshold
        ):
            raise ValueError(f"line {lineno2}: '>' branch does not mirror line {lineno}")
        pos += 1
        right = build(depth + 1)
        return TreeNode(
            n_samples=0,
            class_counts=(),
            majority="",
            feature=feature_names.index(name),
            threshold=threshold,
            left=left,
            right=right,
        )

    root = build(0)
    if pos != len(parsed):
        raise ValueError(f"line {parsed[pos][0]}: trailing content after tree")
    return root
