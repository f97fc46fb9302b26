"""File formats and human-readable listings.

Datasets are JSON-lines: one header record carrying params and the split tag,
then one ``{"events": [...], "causation_ids": [...]}`` record per instance.
Causation sets and models are single JSON documents; sweep results are CSV.
All writers are atomic (temp file + rename) and byte-deterministic for a fixed
seed.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Sequence

import numpy as np

from .exceptions import SweepCsvError
from .generation import Dataset, Instance
from .histogram import HistogramCausationLearner
from .matching import Causation
from .metrics import SCORE_CLASSES
from .mlp import MlpCausationClassifier
from .params import Params
from .sweep import SweepRecord

CSV_FIELDS = ("net", "nc", "mce", "mie", "seed", "method", "accuracy", "score", "reason")


def atomic_write_text(path, text: str):
    """Write via a sibling temp file and rename, so readers never see partial files."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".causelab-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# -- causations -------------------------------------------------------------

def write_causations(path, params: Params, causations: Sequence[Causation]):
    doc = {
        "params": params.to_dict(),
        "causations": [{"id": c.id, "events": list(c.events)} for c in causations],
    }
    atomic_write_text(path, _dump(doc) + "\n")


def read_causations(path) -> tuple[Params, tuple[Causation, ...]]:
    with open(path) as handle:
        doc = json.load(handle)
    params = Params.from_dict(doc["params"])
    causations = tuple(
        Causation(id=int(c["id"]), events=tuple(c["events"])) for c in doc["causations"]
    )
    return params, causations


# -- datasets ---------------------------------------------------------------

def write_dataset(path, dataset: Dataset):
    lines = [_dump({"params": dataset.params.to_dict(), "split_tag": dataset.split_tag})]
    for inst in dataset.instances:
        lines.append(
            _dump({"events": list(inst.events), "causation_ids": sorted(inst.causation_ids)})
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_dataset(path, causations: Sequence[Causation] = ()) -> Dataset:
    with open(path) as handle:
        lines = [line for line in handle.read().splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty dataset file")
    header = json.loads(lines[0])
    params = Params.from_dict(header["params"])
    instances = []
    for line in lines[1:]:
        rec = json.loads(line)
        instances.append(
            Instance(tuple(rec["events"]), frozenset(rec["causation_ids"]))
        )
    return Dataset(params, tuple(causations), tuple(instances), header["split_tag"])


# -- models -----------------------------------------------------------------

def write_histogram_model(path, model: HistogramCausationLearner):
    doc = {
        "type": "histogram",
        "num_event_types": model.num_event_types_,
        "n_outputs": model.n_outputs_,
        "causations": [
            {
                "id": c,
                "learned_causes": list(model.causes_[c]),
                "learned_max_gap": int(model.max_gaps_[c]),
                "positives_seen": int(model.positives_seen_[c]),
            }
            for c in range(model.n_outputs_)
        ],
    }
    atomic_write_text(path, _dump(doc) + "\n")


def write_mlp_model(path, model: MlpCausationClassifier):
    doc = {
        "type": "mlp",
        "num_event_types": model.num_event_types_,
        "instance_length": model.n_features_in_,
        "n_outputs": model.n_outputs_,
        "config": {
            "hidden_units": model.hidden_units,
            "epochs": model.epochs,
            "learning_rate": model.learning_rate,
            "adam_beta1": model.adam_beta1,
            "adam_beta2": model.adam_beta2,
            "adam_epsilon": model.adam_epsilon,
            "prediction_threshold": model.prediction_threshold,
            "seed": model.seed,
        },
        "w1": model.w1_.tolist(),
        "b1": model.b1_.tolist(),
        "w2": model.w2_.tolist(),
        "b2": model.b2_.tolist(),
    }
    atomic_write_text(path, _dump(doc) + "\n")


def write_model(path, model):
    if isinstance(model, HistogramCausationLearner):
        write_histogram_model(path, model)
    elif isinstance(model, MlpCausationClassifier):
        write_mlp_model(path, model)
    else:
        raise TypeError(f"cannot serialize model of type {type(model).__name__}")


def read_model(path):
    """Rebuild a fitted estimator from its JSON document."""
    with open(path) as handle:
        doc = json.load(handle)
    kind = doc.get("type")
    if kind == "histogram":
        model = HistogramCausationLearner(num_event_types=doc["num_event_types"])
        model.num_event_types_ = doc["num_event_types"]
        model.n_outputs_ = doc["n_outputs"]
        model.causes_ = [tuple(c["learned_causes"]) for c in doc["causations"]]
        model.max_gaps_ = [c["learned_max_gap"] for c in doc["causations"]]
        model.positives_seen_ = [c["positives_seen"] for c in doc["causations"]]
        model.learnable_ = np.array([bool(c) for c in model.causes_])
        return model
    if kind == "mlp":
        model = MlpCausationClassifier(
            num_event_types=doc["num_event_types"], **doc["config"]
        )
        model.num_event_types_ = doc["num_event_types"]
        model.n_features_in_ = doc["instance_length"]
        model.n_outputs_ = doc["n_outputs"]
        model.w1_ = np.asarray(doc["w1"], dtype=np.float64)
        model.b1_ = np.asarray(doc["b1"], dtype=np.float64)
        model.w2_ = np.asarray(doc["w2"], dtype=np.float64)
        model.b2_ = np.asarray(doc["b2"], dtype=np.float64)
        return model
    raise ValueError(f"{path}: unknown model type {kind!r}")


# -- sweep results ----------------------------------------------------------

def write_sweep_csv(path, records: Sequence[SweepRecord]):
    lines = [",".join(CSV_FIELDS)]
    for r in records:
        lines.append(
            ",".join(
                [
                    str(r.net), str(r.nc), str(r.mce), str(r.mie),
                    str(r.seed), r.method,
                    "" if r.accuracy is None else repr(r.accuracy),
                    r.score or "",
                    r.reason or "",
                ]
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_sweep_csv(path) -> list[SweepRecord]:
    with open(path) as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != ",".join(CSV_FIELDS):
        raise SweepCsvError(f"{path}: line 1: expected header {','.join(CSV_FIELDS)!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(CSV_FIELDS):
            raise SweepCsvError(
                f"{path}: line {lineno}: expected {len(CSV_FIELDS)} fields, got {len(parts)}"
            )
        try:
            net, nc, mce, mie, seed = (int(p) for p in parts[:5])
            method = parts[5]
            accuracy = None if parts[6] == "" else float(parts[6])
            score = parts[7] or None
            reason = parts[8] or None
        except ValueError as exc:
            raise SweepCsvError(f"{path}: line {lineno}: {exc}") from None
        if score is not None and score not in SCORE_CLASSES:
            raise SweepCsvError(f"{path}: line {lineno}: unknown score {score!r}")
        records.append(
            SweepRecord(net, nc, mce, mie, seed, method, accuracy, score, reason)
        )
    return records


# -- listings ---------------------------------------------------------------

def braced(values) -> str:
    values = list(values)
    if not values:
        return "{ }"
    return "{ " + " ".join(str(v) for v in values) + " }"


def format_causations(causations: Sequence[Causation]) -> str:
    lines = ["Causations:"]
    for i, c in enumerate(causations):
        lines.append(f"[{i}] ID={c.id}, events: {braced(c.events)}")
    return "\n".join(lines) + "\n"


def format_instances(instances: Sequence[Instance]) -> str:
    lines = ["Causation instances:"]
    for i, inst in enumerate(instances):
        lines.append(
            f"[{i}] Events: {braced(inst.events)} "
            f"Causation IDs: {braced(sorted(inst.causation_ids))}"
        )
    return "\n".join(lines) + "\n"
