import pytest

from causelab import (
    Params,
    SweepRecord,
    aggregate_scores,
    combo_mean_accuracies,
    execute_run,
    run_single,
    run_sweep,
    score_class,
    score_rows,
)

FAST_MLP = {"epochs": 5}


def _record(net=15, nc=2, mce=1, mie=0, seed=0, method="histogram",
            accuracy=1.0, reason=None):
    score = None if accuracy is None else score_class(accuracy)
    return SweepRecord(net, nc, mce, mie, seed, method, accuracy, score, reason)


class TestRunSingle:
    def test_one_histogram_record(self):
        record = run_single(15, 2, 1, 0, seed=1, method="histogram")
        assert record.method == "histogram"
        assert record.combo == (15, 2, 1, 0)
        assert record.accuracy == 1.0
        assert record.score == "Good"
        assert not record.skipped

    def test_score_matches_accuracy(self):
        record = run_single(15, 4, 2, 1, seed=0, method="mlp", mlp_overrides=FAST_MLP)
        assert record.score == score_class(record.accuracy)

    def test_infeasible_becomes_skip(self):
        record = run_single(1, 1, 1, 0, seed=0, method="histogram",
                            train_valid=1, train_invalid=1, test_size=1)
        assert record.skipped
        assert record.reason == "infeasible parameters"
        assert record.accuracy is None and record.score is None

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError, match="unknown method"):
            run_single(15, 2, 1, 0, seed=0, method="lstm")

    def test_deterministic(self):
        a = run_single(15, 4, 2, 1, seed=3, method="histogram")
        b = run_single(15, 4, 2, 1, seed=3, method="histogram")
        assert a == b


class TestExecuteRun:
    def test_methods_see_identical_data(self):
        params = Params(15, 2, 1, 0)
        hist = execute_run(params, seed=2, method="histogram")
        mlp = execute_run(params, seed=2, method="mlp", mlp_overrides=FAST_MLP)
        assert hist.train == mlp.train
        assert hist.test == mlp.test

    def test_histogram_easy_combo_perfect(self):
        outcome = execute_run(Params(15, 2, 1, 0), seed=1, method="histogram")
        assert outcome.record.accuracy == 1.0
        assert outcome.record.score == "Good"

    def test_easy_combo_predictions_match_brute_force_relabeling(self):
        # independently relabel the emitted test set with the exhaustive
        # matcher; the histogram predictions must coincide
        from causelab import brute_force_contains

        outcome = execute_run(Params(15, 2, 1, 0), seed=1, method="histogram")
        gap = outcome.test.params.max_intervening_events
        for inst, row in zip(outcome.test.instances, outcome.predictions):
            truth = {
                c.id
                for c in outcome.test.causations
                if brute_force_contains(inst.events, c.events, gap)
            }
            assert set(int(i) for i in row.nonzero()[0]) == truth
            assert inst.causation_ids == frozenset(truth)


class TestRunSweep:
    def test_single_cell(self):
        records = run_sweep(
            net_values=(15,), nc_values=(2,), mce_values=(1,), mie_values=(0,),
            seeds=(0,), methods=("histogram",),
        )
        assert len(records) == 1

    def test_restricted_grid_count_and_order(self):
        records = run_sweep(
            net_values=(15, 20), nc_values=(2,), mce_values=(1, 2), mie_values=(0,),
            seeds=(0, 1), methods=("histogram", "mlp"), mlp_overrides=FAST_MLP,
        )
        assert len(records) == 2 * 1 * 2 * 1 * 2 * 2
        keys = [(r.combo, r.seed, r.method) for r in records]
        assert keys == sorted(keys, key=lambda k: (
            (15, 20).index(k[0][0]), k[0][1], (1, 2).index(k[0][2]), k[0][3],
            k[1], ("histogram", "mlp").index(k[2]),
        ))

    def test_deterministic(self):
        kwargs = dict(
            net_values=(15,), nc_values=(2, 4), mce_values=(1,), mie_values=(0, 1),
            seeds=(0, 1), methods=("histogram",),
        )
        assert run_sweep(**kwargs) == run_sweep(**kwargs)

    def test_parallel_matches_serial(self):
        kwargs = dict(
            net_values=(15,), nc_values=(2, 4), mce_values=(1, 2), mie_values=(0,),
            seeds=(0, 1), methods=("histogram",),
        )
        assert run_sweep(jobs=2, **kwargs) == run_sweep(jobs=1, **kwargs)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            run_sweep(net_values=(), seeds=(0,))

    def test_skips_recorded_not_fatal(self):
        records = run_sweep(
            net_values=(1,), nc_values=(1,), mce_values=(1,), mie_values=(0,),
            seeds=(0, 1), methods=("histogram",),
            train_valid=1, train_invalid=1, test_size=1,
        )
        assert len(records) == 2
        assert all(r.skipped and r.reason == "infeasible parameters" for r in records)


class TestAggregation:
    def test_mean_then_classify(self):
        records = [
            _record(seed=0, accuracy=1.0),
            _record(seed=1, accuracy=0.8),
        ]
        assert combo_mean_accuracies(records, "histogram") == [((15, 2, 1, 0), pytest.approx(0.9))]
        assert aggregate_scores(records, "histogram") == (1, 0, 0)

    def test_empty(self):
        assert aggregate_scores([], "histogram") == (0, 0, 0)

    def test_triple_sums_to_completed_combos(self):
        records = [
            _record(nc=2, accuracy=1.0),
            _record(nc=4, accuracy=0.75),
            _record(nc=6, accuracy=0.2),
            _record(nc=8, accuracy=None, reason="infeasible parameters"),
        ]
        good, fair, poor = aggregate_scores(records, "histogram")
        assert (good, fair, poor) == (1, 1, 1)
        assert good + fair + poor == 3  # the skipped combo is excluded

    def test_partial_skips_use_remaining_seeds(self):
        records = [
            _record(seed=0, accuracy=0.9),
            _record(seed=1, accuracy=None, reason="infeasible parameters"),
        ]
        assert combo_mean_accuracies(records, "histogram") == [((15, 2, 1, 0), 0.9)]

    def test_methods_kept_separate(self):
        records = [
            _record(method="histogram", accuracy=1.0),
            _record(method="mlp", accuracy=0.5),
        ]
        assert aggregate_scores(records, "histogram") == (1, 0, 0)
        assert aggregate_scores(records, "mlp") == (0, 0, 1)

    def test_score_rows_shape(self):
        records = [
            _record(nc=2, accuracy=1.0),
            _record(nc=4, accuracy=0.5),
        ]
        X, classes = score_rows(records, "histogram")
        assert X.shape == (2, 4)
        assert X[:, 1].tolist() == [2.0, 4.0]
        assert classes == ["Good", "Poor"]
