"""
Unit tests for the synthetic dataset generators.
"""

import numpy as np
import pytest

from core.exceptions import InvalidSpec
from core.models import ClassifierKind, RegressorLaw, SynthSpec, TaskKind
from core.services import harness


class TestGenLogistic:
    """Tests for gen_logistic."""

    def test_shape_and_names(self):
        """Should build an n x p binary test set named x1..xp."""
        ts = harness.gen_logistic(SynthSpec(n=500, seed=3))
        assert (ts.n, ts.p) == (500, 5)
        assert ts.feature_names == ("x1", "x2", "x3", "x4", "x5")
        assert ts.task == TaskKind.BINARY
        assert ts.source == "synth:logistic:seed=3"

    def test_reproducible(self):
        """Should give identical arrays for the same seed."""
        first = harness.gen_logistic(SynthSpec(n=300, seed=11))
        second = harness.gen_logistic({"n": 300, "seed": 11})
        assert np.array_equal(first.features, second.features)
        assert np.array_equal(first.predictions, second.predictions)
        assert np.array_equal(first.truths, second.truths)

    def test_seed_changes_draws(self):
        """Should draw different features for different seeds."""
        first = harness.gen_logistic(SynthSpec(n=300, seed=1))
        second = harness.gen_logistic(SynthSpec(n=300, seed=2))
        assert not np.array_equal(first.features, second.features)

    def test_features_drawn_first(self):
        """Should take the features from the first n x p draws of the seeded generator."""
        ts = harness.gen_logistic(SynthSpec(n=200, seed=5))
        expected = np.random.default_rng(5).random((200, 5))
        assert np.array_equal(ts.features, expected)

    def test_uniform_law(self):
        """Should keep uniform regressors inside [0, 1)."""
        ts = harness.gen_logistic(SynthSpec(n=400, seed=6))
        assert ts.features.min() >= 0.0
        assert ts.features.max() < 1.0

    def test_normal_law(self):
        """Should draw signed regressors under the normal law."""
        ts = harness.gen_logistic(SynthSpec(n=400, seed=6, regressor_law=RegressorLaw.NORMAL))
        assert ts.features.min() < 0.0 < ts.features.max()

    def test_true_model_classifier(self):
        """Should predict 1 exactly where X beta >= 0."""
        spec = SynthSpec(n=1000, seed=7, regressor_law=RegressorLaw.NORMAL)
        ts = harness.gen_logistic(spec)
        expected = (ts.features @ np.array(spec.beta) >= 0.0).astype(int)
        assert np.array_equal(ts.predictions, expected)

    def test_label_rate(self):
        """Should draw balanced labels when every coefficient is zero."""
        ts = harness.gen_logistic(SynthSpec(n=4000, beta=(0.0, 0.0), seed=8))
        assert abs(ts.truths.mean() - 0.5) < 0.05
        assert ts.predictions.sum() == 4000

    def test_trained_classifier_keeps_test_draws(self):
        """Should share features and labels with the true-model variant of the same seed."""
        true_model = harness.gen_logistic(SynthSpec(n=300, seed=9))
        trained = harness.gen_logistic(SynthSpec(n=300, seed=9, classifier=ClassifierKind.TRAINED))
        assert np.array_equal(true_model.features, trained.features)
        assert np.array_equal(true_model.truths, trained.truths)
        assert set(np.unique(trained.predictions)) <= {0, 1}


class TestTrainLogistic:
    """Tests for train_logistic."""

    def test_recovers_signs(self):
        """Should recover the signs of well-separated coefficients."""
        rng = np.random.default_rng(12)
        features = rng.standard_normal((2000, 2))
        labels = (rng.random(2000) < 1.0 / (1.0 + np.exp(-(features @ [2.0, -2.0])))).astype(int)
        coefficients = harness.train_logistic(features, labels)
        assert coefficients.shape == (3,)
        assert abs(coefficients[0]) < 0.3
        assert coefficients[1] > 0.5
        assert coefficients[2] < -0.5

    def test_zero_iterations(self):
        """Should return the zero start when no step is taken."""
        coefficients = harness.train_logistic(np.ones((4, 2)), [0, 1, 0, 1], iterations=0)
        assert coefficients.tolist() == [0.0, 0.0, 0.0]


class TestGenScaling:
    """Tests for gen_scaling."""

    def test_balanced(self):
        """Should split labels and predictions evenly between the classes."""
        ts = harness.gen_scaling(1000, 10, seed=1)
        assert (ts.n, ts.p) == (1000, 10)
        assert ts.truths.sum() == 500
        assert ts.predictions.sum() == 500

    def test_reproducible(self):
        """Should reproduce the same set for the same seed."""
        first = harness.gen_scaling(50, 3, seed=4)
        second = harness.gen_scaling(50, 3, seed=4)
        assert np.array_equal(first.features, second.features)
        assert np.array_equal(first.truths, second.truths)

    @pytest.mark.parametrize("n, p, seed", [(1, 3, 0), (10, 0, 0), (10, 3, -1)])
    def test_invalid(self, n, p, seed):
        """Should raise InvalidSpec on impossible sizes or seeds."""
        with pytest.raises(InvalidSpec):
            harness.gen_scaling(n, p, seed)


class TestSynthSpec:
    """Tests for SynthSpec validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 99},
            {"n": 100, "beta": ()},
            {"n": 100, "seed": -1},
            {"n": 100, "seed": 2**64},
            {"n": 100, "regressor_law": "cauchy"},
            {"n": 100, "classifier": "forest"},
        ],
    )
    def test_invalid(self, kwargs):
        """Should reject out-of-range parameters."""
        with pytest.raises(InvalidSpec):
            SynthSpec(**kwargs)

    def test_defaults(self):
        """Should default to five coefficients, uniform regressors and the true model."""
        spec = SynthSpec(n=100)
        assert spec.beta == (-4.0, 2.0, 0.0, 2.0, 4.0)
        assert spec.p == 5
        assert spec.regressor_law == RegressorLaw.UNIFORM
        assert spec.classifier == ClassifierKind.TRUE_MODEL
