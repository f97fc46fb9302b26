import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from causelab import (
    MlpCausationClassifier,
    Params,
    TrainingDivergedError,
    UnknownEventTypeError,
    encode_instance,
    encode_labels,
    gradient_check,
    make_rng,
    predict_mlp,
    train_mlp,
)
from causelab.mlp import (
    encode_event_matrix,
    forward_backward,
    forward_loss,
    init_weights,
)
from causelab.sweep import execute_run


class TestEncodeInstance:
    def test_index_formula(self):
        params = Params(10, 2, 2, 2, instance_length=5)
        vec = encode_instance((4, 9, 9, 3, 0), params)
        assert vec.shape == (50,)
        assert set(np.nonzero(vec)[0]) == {20, 46, 47, 18, 4}

    def test_single_type_all_ones(self):
        params = Params(1, 1, 1, 0, instance_length=3)
        assert encode_instance((0, 0, 0), params).tolist() == [1.0, 1.0, 1.0]

    def test_order_is_preserved(self):
        params = Params(10, 2, 2, 2, instance_length=5)
        a = encode_instance((4, 9, 9, 3, 0), params)
        b = encode_instance((9, 4, 9, 3, 0), params)
        assert not np.array_equal(a, b)

    def test_out_of_range_event(self):
        params = Params(5, 2, 2, 2, instance_length=5)
        with pytest.raises(UnknownEventTypeError, match="unknown event type"):
            encode_instance((0, 1, 2, 3, 7), params)

    def test_wrong_length(self):
        params = Params(5, 2, 2, 2, instance_length=5)
        with pytest.raises(ValueError, match="dimension mismatch"):
            encode_instance((0, 1, 2), params)

    @given(st.lists(st.integers(0, 6), min_size=1, max_size=8))
    def test_round_trip_decodes_exactly(self, events):
        params = Params(7, 1, 1, 0, instance_length=len(events))
        vec = encode_instance(events, params)
        length = params.instance_length
        decoded = [None] * length
        for index in np.nonzero(vec)[0]:
            decoded[index % length] = index // length
        assert decoded == list(events)


class TestEncodeLabels:
    def test_both_hot(self):
        assert encode_labels({0, 1}, 2).tolist() == [1.0, 1.0]

    def test_empty(self):
        assert encode_labels(set(), 4).tolist() == [0.0, 0.0, 0.0, 0.0]

    def test_single(self):
        assert encode_labels({2}, 3).tolist() == [0.0, 0.0, 1.0]

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            encode_labels({3}, 3)


def _small_problem(seed=0, n=16):
    rng = make_rng(seed)
    X = rng.integers(0, 5, size=(n, 5))
    Y = (rng.random((n, 3)) < 0.3).astype(np.int64)
    return X, Y


class TestTraining:
    def test_deterministic_fit(self):
        X, Y = _small_problem()
        a = MlpCausationClassifier(num_event_types=5, epochs=40, seed=7).fit(X, Y)
        b = MlpCausationClassifier(num_event_types=5, epochs=40, seed=7).fit(X, Y)
        assert a.loss_curve_ == b.loss_curve_
        assert np.array_equal(a.w1_, b.w1_)
        assert np.array_equal(a.w2_, b.w2_)

    def test_loss_decreases(self):
        X, Y = _small_problem()
        model = MlpCausationClassifier(num_event_types=5, epochs=100, seed=3).fit(X, Y)
        assert model.final_loss_ < model.loss_curve_[0]
        assert len(model.loss_curve_) == 100

    def test_full_batch_loss_order_invariant(self):
        X, Y = _small_problem()
        rng = make_rng(1)
        perm = rng.permutation(len(X))
        a = MlpCausationClassifier(num_event_types=5, epochs=30, seed=7).fit(X, Y)
        b = MlpCausationClassifier(num_event_types=5, epochs=30, seed=7).fit(X[perm], Y[perm])
        assert max(abs(x - y) for x, y in zip(a.loss_curve_, b.loss_curve_)) < 1e-12

    def test_zero_epochs_rejected(self):
        X, Y = _small_problem()
        with pytest.raises(ValueError, match="epochs"):
            MlpCausationClassifier(num_event_types=5, epochs=0).fit(X, Y)

    def test_empty_training_set_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            MlpCausationClassifier(num_event_types=5).fit(
                np.zeros((0, 5), dtype=int), np.zeros((0, 2), dtype=int)
            )

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_divergence_reports_epoch(self):
        X, Y = _small_problem()
        with pytest.raises(TrainingDivergedError, match=r"training diverged at epoch \d+"):
            MlpCausationClassifier(
                num_event_types=5, epochs=50, learning_rate=1e200, seed=0
            ).fit(X, Y)

    def test_memorizes_easy_combo_training_set(self):
        # NET=15, NC=2, MCE=1, MIE=0: loss lands well under 0.05, so every
        # training instance is reproduced exactly
        outcome = execute_run(Params(15, 2, 1, 0), seed=1, method="mlp")
        assert outcome.model.final_loss_ < 0.05
        X, Y = outcome.train.to_arrays()
        assert np.array_equal(outcome.model.predict(X), Y)


class TestPrediction:
    def _fixed_output_model(self, logits):
        X, Y = _small_problem()
        model = MlpCausationClassifier(num_event_types=5, epochs=1, seed=0).fit(
            X, Y[:, : len(logits)]
        )
        # zero the network so the output is exactly sigmoid(b2)
        model.w1_ = np.zeros_like(model.w1_)
        model.b1_ = np.zeros_like(model.b1_)
        model.w2_ = np.zeros_like(model.w2_)
        model.b2_ = np.asarray(logits, dtype=np.float64)
        return model, X

    def test_threshold_selects_confident_outputs(self):
        model, X = self._fixed_output_model([np.log(9.0), np.log(0.25)])  # p = 0.9, 0.2
        assert model.predict_ids(X[0]) == {0}

    def test_threshold_boundary_is_inclusive(self):
        model, X = self._fixed_output_model([0.0, 0.0])  # p = 0.5 exactly
        assert model.predict_ids(X[0]) == {0, 1}

    def test_dimension_mismatch_rejected(self):
        X, Y = _small_problem()
        model = MlpCausationClassifier(num_event_types=5, epochs=1, seed=0).fit(X, Y)
        with pytest.raises(ValueError, match="dimension mismatch"):
            model.predict(np.zeros((2, 7), dtype=int))

    def test_unknown_event_rejected(self):
        X, Y = _small_problem()
        model = MlpCausationClassifier(num_event_types=5, epochs=1, seed=0).fit(X, Y)
        with pytest.raises(UnknownEventTypeError):
            model.predict(np.full((1, 5), 9))

    def test_predict_proba_shape(self):
        X, Y = _small_problem()
        model = MlpCausationClassifier(num_event_types=5, epochs=5, seed=0).fit(X, Y)
        proba = model.predict_proba(X)
        assert proba.shape == Y.shape
        assert ((proba > 0) & (proba < 1)).all()


class TestGradients:
    def _random_case(self, rng):
        alphabet = int(rng.integers(2, 5))
        length = int(rng.integers(2, 5))
        hidden = int(rng.integers(2, 8))
        outputs = int(rng.integers(1, 4))
        n = int(rng.integers(1, 5))
        inputs = encode_event_matrix(rng.integers(0, alphabet, size=(n, length)), alphabet)
        targets = (rng.random((n, outputs)) < 0.5).astype(np.float64)
        weights = init_weights(inputs.shape[1], hidden, outputs, rng)
        return weights, inputs, targets

    def test_small_random_networks(self):
        rng = make_rng(42)
        for _ in range(20):
            weights, inputs, targets = self._random_case(rng)
            assert gradient_check(weights, inputs, targets) < 1e-4

    def test_zero_network_zero_inputs(self):
        weights = {
            "w1": np.zeros((6, 4)),
            "b1": np.zeros(4),
            "w2": np.zeros((4, 2)),
            "b2": np.zeros(2),
        }
        inputs = np.zeros((2, 6))
        targets = np.zeros((2, 2))
        _, grads = forward_backward(weights, inputs, targets)
        assert np.array_equal(grads["w1"], np.zeros((6, 4)))

    def test_doubling_step_quadruples_discrepancy(self):
        rng = make_rng(5)
        weights, inputs, targets = self._random_case(rng)
        _, grads = forward_backward(weights, inputs, targets)

        def worst_discrepancy(step):
            worst = 0.0
            for key, arr in weights.items():
                flat = arr.ravel()
                gflat = grads[key].ravel()
                for i in range(flat.size):
                    orig = flat[i]
                    flat[i] = orig + step
                    up = forward_loss(weights, inputs, targets)
                    flat[i] = orig - step
                    down = forward_loss(weights, inputs, targets)
                    flat[i] = orig
                    worst = max(worst, abs((up - down) / (2 * step) - gflat[i]))
            return worst

        ratio = worst_discrepancy(2e-3) / worst_discrepancy(1e-3)
        assert 2.0 < ratio < 8.0

    def test_accepts_fitted_estimator(self):
        X, Y = _small_problem(n=3)
        model = MlpCausationClassifier(
            num_event_types=5, hidden_units=6, epochs=2, seed=1
        ).fit(X, Y)
        inputs = encode_event_matrix(X, 5)
        assert gradient_check(model, inputs, Y.astype(float)) < 1e-4


class TestEstimatorApi:
    def test_get_params_defaults(self):
        params = MlpCausationClassifier().get_params()
        assert params["hidden_units"] == 128
        assert params["epochs"] == 500
        assert params["learning_rate"] == 0.001
        assert params["adam_beta1"] == 0.9
        assert params["adam_beta2"] == 0.999
        assert params["adam_epsilon"] == 1e-8
        assert params["prediction_threshold"] == 0.5

    def test_clone_keeps_config(self):
        model = MlpCausationClassifier(epochs=3, learning_rate=0.01, seed=9)
        assert clone(model).get_params() == model.get_params()

    def test_train_mlp_wrapper(self, example_dataset):
        model = train_mlp(example_dataset, epochs=200, seed=0)
        assert model.n_outputs_ == 2
        predicted = predict_mlp(model, example_dataset.instances[0].events)
        assert predicted <= {0, 1}

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 6))
    def test_hidden_width_respected(self, width):
        X, Y = _small_problem(n=6)
        model = MlpCausationClassifier(
            num_event_types=5, hidden_units=width, epochs=2, seed=0
        ).fit(X, Y)
        assert model.w1_.shape == (25, width)
