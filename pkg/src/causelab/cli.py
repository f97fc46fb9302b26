"""Command-line interface: generate, run, sweep, analyze.

Every command is a deterministic function of its flags (including the seed);
rerunning with identical flags produces byte-identical artifacts. Errors land
on stderr with a ``causelab: error:`` prefix and a nonzero exit code.
"""

from __future__ import annotations

import functools
import os
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from .exceptions import CauselabError
from .generation import generate_causations, generate_test_set, generate_training_set
from .params import Params
from .serialize import (
    braced,
    format_causations,
    format_instances,
    read_sweep_csv,
    write_causations,
    write_dataset,
    write_model,
    write_sweep_csv,
)
from .sweep import (
    MCE_VALUES,
    MIE_VALUES,
    NC_VALUES,
    NET_VALUES,
    execute_run,
    run_seed_sequences,
    run_sweep,
    score_rows,
    aggregate_scores,
)
from .tree import fit_score_tree


@dataclass
class RunConfig:
    """Everything one generate/run invocation needs."""

    params: Params
    train_valid: int = 50
    train_invalid: int = 50
    test_size: int = 50
    seed: int = 0
    method: str = "histogram"
    mlp_overrides: dict = field(default_factory=dict)
    output: str | None = None
    verbose: bool = False


def cmd_generate(config: RunConfig) -> dict[str, str]:
    """Write causations.json, train.jsonl, and test.jsonl; return their paths."""
    data_ss, _ = run_seed_sequences(config.params, config.seed)
    rng = np.random.Generator(np.random.PCG64(data_ss))
    causations = generate_causations(config.params, rng)
    train = generate_training_set(
        config.params, causations, config.train_valid, config.train_invalid, rng
    )
    test = generate_test_set(config.params, causations, config.test_size, rng)

    out_dir = config.output or "."
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "causations": os.path.join(out_dir, "causations.json"),
        "train": os.path.join(out_dir, "train.jsonl"),
        "test": os.path.join(out_dir, "test.jsonl"),
    }
    write_causations(paths["causations"], config.params, causations)
    write_dataset(paths["train"], train)
    write_dataset(paths["test"], test)
    if config.verbose:
        click.echo(format_causations(causations), nl=False)
        click.echo(format_instances(train.instances + test.instances), nl=False)
    return paths


def cmd_run(config: RunConfig):
    """One generate > train > test cycle; prints accuracy and score class."""
    outcome = execute_run(
        config.params,
        config.seed,
        config.method,
        config.train_valid,
        config.train_invalid,
        config.test_size,
        config.mlp_overrides or None,
    )
    record = outcome.record
    if config.verbose:
        for i, inst in enumerate(outcome.test.instances):
            predicted = sorted(int(c) for c in np.nonzero(outcome.predictions[i])[0])
            true = sorted(inst.causation_ids)
            click.echo(f"[{i}] predicted: {braced(predicted)} true: {braced(true)}")
    click.echo(f"accuracy: {record.accuracy:.4f}")
    click.echo(f"score: {record.score}")
    if config.output:
        write_model(config.output, outcome.model)
    return record


def cmd_sweep(
    net_values,
    nc_values,
    mce_values,
    mie_values,
    n_seeds: int,
    methods,
    train_valid: int,
    train_invalid: int,
    test_size: int,
    output: str,
    jobs: int = 1,
):
    """Run the grid and write the results CSV; returns the records."""
    records = run_sweep(
        net_values=net_values,
        nc_values=nc_values,
        mce_values=mce_values,
        mie_values=mie_values,
        seeds=tuple(range(n_seeds)),
        methods=methods,
        train_valid=train_valid,
        train_invalid=train_invalid,
        test_size=test_size,
        jobs=jobs,
    )
    write_sweep_csv(output, records)
    skips = sum(record.skipped for record in records)
    click.echo(f"wrote {len(records)} records to {output} ({skips} skipped)")
    return records


def cmd_analyze(csv_path: str, method: str, max_depth: int | None = None) -> tuple[str, str]:
    """Score summary plus rendered decision tree for one method."""
    records = read_sweep_csv(csv_path)
    good, fair, poor = aggregate_scores(records, method)
    summary = f"Scores: Good={good}, Fair={fair}, Poor={poor}"
    rows, classes = score_rows(records, method)
    if not classes:
        raise CauselabError(f"no completed runs for method {method!r} in {csv_path}")
    tree = fit_score_tree(rows, classes, max_depth=max_depth)
    return summary, tree.export_text()


# -- click wiring -------------------------------------------------------------

def _fail_on_error(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (CauselabError, ValueError, OSError) as exc:
            click.echo(f"causelab: error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _params_options(fn):
    options = [
        click.option(
            "--num-event-types", "--net", "num_event_types",
            type=int, default=10, show_default=True, help="Number of event types (NET).",
        ),
        click.option(
            "--num-causations", "--nc", "num_causations",
            type=int, default=2, show_default=True, help="Number of causations (NC).",
        ),
        click.option(
            "--max-cause-events", "--mce", "max_cause_events",
            type=int, default=2, show_default=True, help="Maximum cause events (MCE).",
        ),
        click.option(
            "--max-intervening-events", "--mie", "max_intervening_events",
            type=int, default=2, show_default=True,
            help="Maximum intervening events (MIE).",
        ),
        click.option(
            "--instance-length", type=int, default=None,
            help="Events per instance; defaults to fitting a maximal embedding plus noise.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _size_options(fn):
    options = [
        click.option("--train-valid", type=int, default=50, show_default=True,
                     help="Valid instances in the training set."),
        click.option("--train-invalid", type=int, default=50, show_default=True,
                     help="Invalid instances in the training set."),
        click.option("--test-size", type=int, default=50, show_default=True,
                     help="Random instances in the test set."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


_seed_option = click.option(
    "--seed", type=int, default=0, show_default=True, envvar="CAUSELAB_SEED",
    help="Random seed (env CAUSELAB_SEED overrides the default).",
)


def _int_list(_ctx, _param, value):
    try:
        return tuple(int(part) for part in str(value).split(",") if part != "")
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated integer list, got {value!r}")


@click.group()
def main():
    """Causation-conjunction learning experiments on synthetic event sequences."""


@main.command()
@_params_options
@_size_options
@_seed_option
@click.option("--output-dir", "output_dir", type=click.Path(), default=".",
              show_default=True, help="Directory for the three dataset files.")
@click.option("--verbose", is_flag=True, help="Print the causation/instance listing.")
@_fail_on_error
def generate(num_event_types, num_causations, max_cause_events, max_intervening_events,
             instance_length, train_valid, train_invalid, test_size, seed,
             output_dir, verbose):
    """Generate causations plus labeled train/test datasets."""
    params = Params(num_event_types, num_causations, max_cause_events,
                    max_intervening_events, instance_length)
    paths = cmd_generate(RunConfig(
        params=params, train_valid=train_valid, train_invalid=train_invalid,
        test_size=test_size, seed=seed, output=output_dir, verbose=verbose,
    ))
    for name in ("causations", "train", "test"):
        click.echo(f"wrote {paths[name]}")


@main.command()
@_params_options
@_size_options
@_seed_option
@click.option("--method", type=click.Choice(["histogram", "mlp"]), required=True)
@click.option("--epochs", type=int, default=500, show_default=True,
              help="MLP training epochs.")
@click.option("--learning-rate", type=float, default=0.001, show_default=True,
              help="MLP Adam learning rate.")
@click.option("--threshold", type=float, default=0.5, show_default=True,
              help="MLP prediction threshold.")
@click.option("--model-out", type=click.Path(), default=None,
              help="Optional path for the trained model JSON.")
@click.option("--verbose", is_flag=True, help="Print per-instance predicted vs true IDs.")
@_fail_on_error
def run(num_event_types, num_causations, max_cause_events, max_intervening_events,
        instance_length, train_valid, train_invalid, test_size, seed, method,
        epochs, learning_rate, threshold, model_out, verbose):
    """Train one method on fresh data and report test accuracy."""
    params = Params(num_event_types, num_causations, max_cause_events,
                    max_intervening_events, instance_length)
    overrides = {}
    if method == "mlp":
        overrides = {
            "epochs": epochs,
            "learning_rate": learning_rate,
            "prediction_threshold": threshold,
        }
    cmd_run(RunConfig(
        params=params, train_valid=train_valid, train_invalid=train_invalid,
        test_size=test_size, seed=seed, method=method, mlp_overrides=overrides,
        output=model_out, verbose=verbose,
    ))


@main.command()
@click.option("--net", callback=_int_list, default=",".join(map(str, NET_VALUES)),
              show_default=True, help="Comma-separated NET values.")
@click.option("--nc", callback=_int_list, default=",".join(map(str, NC_VALUES)),
              show_default=True, help="Comma-separated NC values.")
@click.option("--mce", callback=_int_list, default=",".join(map(str, MCE_VALUES)),
              show_default=True, help="Comma-separated MCE values.")
@click.option("--mie", callback=_int_list, default=",".join(map(str, MIE_VALUES)),
              show_default=True, help="Comma-separated MIE values.")
@click.option("--seeds", type=int, default=10, show_default=True,
              help="Number of seeds (0..N-1) per combo.")
@click.option("--methods", default="histogram,mlp", show_default=True,
              help="Comma-separated methods to run.")
@_size_options
@click.option("--output", type=click.Path(), default="results.csv", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Parallel worker processes.")
@_fail_on_error
def sweep(net, nc, mce, mie, seeds, methods, train_valid, train_invalid,
          test_size, output, jobs):
    """Run the full parameter grid and write a results CSV."""
    method_list = tuple(m for m in methods.split(",") if m)
    cmd_sweep(net, nc, mce, mie, seeds, method_list,
              train_valid, train_invalid, test_size, output, jobs)


@main.command()
@click.argument("results_csv", type=click.Path(exists=True))
@click.option("--method", type=click.Choice(["histogram", "mlp"]), required=True)
@click.option("--max-depth", type=int, default=None, help="Decision-tree depth bound.")
@_fail_on_error
def analyze(results_csv, method, max_depth):
    """Summarize scores and print the parameter decision tree."""
    summary, tree_text = cmd_analyze(results_csv, method, max_depth)
    click.echo(summary)
    click.echo(tree_text, nl=False)


if __name__ == "__main__":
    main()
