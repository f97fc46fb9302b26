"""Parameter-grid experiment runner.

One run = (parameter combo, seed, method): generate causations, a 50/50
training set, and a 50-instance test set, train the method, and score the
exact-match accuracy of its test predictions. Both methods at the same
(combo, seed) see identical data, so comparisons are paired. Runs whose
generation is infeasible are recorded as skips instead of aborting the sweep.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import CausationSpaceExhaustedError, InfeasibleParametersError
from .generation import Dataset, generate_causations, generate_test_set, generate_training_set
from .histogram import train_histogram
from .metrics import GOOD, FAIR, POOR, exact_match_accuracy, score_class
from .mlp import train_mlp
from .params import Params

NET_VALUES = (15, 20, 25)
NC_VALUES = (2, 4, 6, 8, 10)
MCE_VALUES = (1, 2, 3)
MIE_VALUES = (0, 1, 2)
DEFAULT_SEEDS = tuple(range(10))
METHODS = ("histogram", "mlp")


@dataclass(frozen=True)
class SweepRecord:
    """Outcome of one (combo, seed, method) run."""

    net: int
    nc: int
    mce: int
    mie: int
    seed: int
    method: str
    accuracy: float | None
    score: str | None
    reason: str | None = None

    @property
    def skipped(self) -> bool:
        return self.reason is not None

    @property
    def combo(self) -> tuple[int, int, int, int]:
        return (self.net, self.nc, self.mce, self.mie)


@dataclass
class RunOutcome:
    """Full artifacts of one completed run; the sweep keeps only the record."""

    record: SweepRecord
    train: Dataset
    test: Dataset
    model: object
    predictions: np.ndarray


def run_seed_sequences(params: Params, seed: int) -> tuple[np.random.SeedSequence, int]:
    """Derive the data-generation seed sequence and the model seed for one run.

    Mixing the combo into the entropy decorrelates runs across the grid while
    keeping every run reproducible from (params, seed) alone.
    """
    root = np.random.SeedSequence(
        [
            params.num_event_types,
            params.num_causations,
            params.max_cause_events,
            params.max_intervening_events,
            int(seed),
        ]
    )
    data_ss, model_ss = root.spawn(2)
    return data_ss, int(model_ss.generate_state(1, dtype=np.uint64)[0])


def execute_run(
    params: Params,
    seed: int,
    method: str,
    train_valid: int = 50,
    train_invalid: int = 50,
    test_size: int = 50,
    mlp_overrides: dict | None = None,
) -> RunOutcome:
    """One generate, train, test cycle. Generation errors propagate."""
    if method not in METHODS:
        raise ValueError(f"unknown method: {method!r}")
    data_ss, model_seed = run_seed_sequences(params, seed)
    rng = np.random.Generator(np.random.PCG64(data_ss))
    causations = generate_causations(params, rng)
    train = generate_training_set(params, causations, train_valid, train_invalid, rng)
    test = generate_test_set(params, causations, test_size, rng)
    if method == "histogram":
        model = train_histogram(train)
    else:
        model = train_mlp(train, seed=model_seed, **(mlp_overrides or {}))
    X_test, Y_test = test.to_arrays()
    predictions = model.predict(X_test)
    accuracy = float(exact_match_accuracy(predictions, Y_test))
    record = SweepRecord(
        params.num_event_types, params.num_causations,
        params.max_cause_events, params.max_intervening_events,
        seed, method, accuracy, score_class(accuracy),
    )
    return RunOutcome(record, train, test, model, predictions)


def run_single(
    net: int,
    nc: int,
    mce: int,
    mie: int,
    seed: int,
    method: str,
    train_valid: int = 50,
    train_invalid: int = 50,
    test_size: int = 50,
    mlp_overrides: dict | None = None,
) -> SweepRecord:
    """Record for one run; infeasible generation becomes a skip record."""
    params = Params(net, nc, mce, mie)
    try:
        outcome = execute_run(
            params, seed, method, train_valid, train_invalid, test_size, mlp_overrides
        )
    except (InfeasibleParametersError, CausationSpaceExhaustedError) as exc:
        return SweepRecord(net, nc, mce, mie, seed, method, None, None, reason=str(exc))
    return outcome.record


def _run_star(args) -> SweepRecord:
    return run_single(*args)


def run_sweep(
    net_values: Sequence[int] = NET_VALUES,
    nc_values: Sequence[int] = NC_VALUES,
    mce_values: Sequence[int] = MCE_VALUES,
    mie_values: Sequence[int] = MIE_VALUES,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    methods: Sequence[str] = METHODS,
    train_valid: int = 50,
    train_invalid: int = 50,
    test_size: int = 50,
    jobs: int = 1,
    mlp_overrides: dict | None = None,
) -> list[SweepRecord]:
    """Run every (combo, seed, method) in deterministic order.

    Records come back ordered by combo (grid product order), then seed, then
    method, regardless of ``jobs``.
    """
    for name, values in (
        ("net_values", net_values), ("nc_values", nc_values),
        ("mce_values", mce_values), ("mie_values", mie_values),
        ("seeds", seeds), ("methods", methods),
    ):
        if len(values) == 0:
            raise ValueError(f"{name} must be non-empty")
    tasks = [
        (net, nc, mce, mie, seed, method,
         train_valid, train_invalid, test_size, mlp_overrides)
        for net, nc, mce, mie in itertools.product(
            net_values, nc_values, mce_values, mie_values
        )
        for seed in seeds
        for method in methods
    ]
    if jobs <= 1:
        return [_run_star(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, tasks, chunksize=4))


def combo_mean_accuracies(
    records: Sequence[SweepRecord], method: str
) -> list[tuple[tuple[int, int, int, int], float]]:
    """Per-combo mean accuracy across seeds for one method.

    Skipped runs are ignored; combos with no completed run are dropped.
    Combos keep their first-appearance order.
    """
    by_combo: dict[tuple, list[float]] = {}
    for record in records:
        if record.method != method or record.skipped:
            continue
        by_combo.setdefault(record.combo, []).append(record.accuracy)
    return [(combo, sum(vals) / len(vals)) for combo, vals in by_combo.items()]


def aggregate_scores(records: Sequence[SweepRecord], method: str) -> tuple[int, int, int]:
    """(Good, Fair, Poor) counts over per-combo mean accuracies."""
    tally = {GOOD: 0, FAIR: 0, POOR: 0}
    for _, mean_accuracy in combo_mean_accuracies(records, method):
        tally[score_class(mean_accuracy)] += 1
    return (tally[GOOD], tally[FAIR], tally[POOR])


def score_rows(
    records: Sequence[SweepRecord], method: str
) -> tuple[np.ndarray, list[str]]:
    """Decision-tree input: (combo parameter rows, per-combo score classes)."""
    combos = combo_mean_accuracies(records, method)
    X = np.array([combo for combo, _ in combos], dtype=np.float64)
    classes = [score_class(mean) for _, mean in combos]
    return X, classes
