"""
Synthetic validation datasets.

All draws come from numpy's PCG64 generator seeded with the SynthSpec seed, in a
fixed order, so a seed reproduces the same test set on every platform:
test features (n x p, row-major), test labels (n uniforms), then, for the
trained classifier only, training features and training labels.
"""

import logging

import numpy as np
from scipy.special import expit

from core.exceptions import InvalidSpec
from core.models import ClassifierKind, RegressorLaw, SynthSpec, TaskKind, TestSet

logger = logging.getLogger(__name__)

TRAIN_ITERATIONS = 500
TRAIN_STEP = 0.1


def _regressors(rng, n, p, law):
    if law == RegressorLaw.NORMAL:
        return rng.standard_normal((n, p))
    return rng.random((n, p))


def _labels(rng, linear):
    return (rng.random(linear.shape[0]) < expit(linear)).astype(np.int64)


def _threshold(linear):
    # sigmoid(z) = 0.5 exactly counts as a positive prediction.
    return (expit(linear) >= 0.5).astype(np.int64)


def train_logistic(features, labels, iterations=TRAIN_ITERATIONS, step=TRAIN_STEP):
    """
    Full-batch gradient ascent on the mean log-likelihood, intercept first,
    starting from zero. Returns the coefficient vector (intercept, beta_1..beta_p).
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    design = np.column_stack([np.ones(features.shape[0]), features])
    coefficients = np.zeros(design.shape[1])
    for _ in range(iterations):
        gradient = design.T @ (labels - expit(design @ coefficients)) / design.shape[0]
        coefficients = coefficients + step * gradient
    logger.debug(f"Trained logistic coefficients {coefficients.tolist()}")
    return coefficients


def gen_logistic(spec):
    """Y ~ Bernoulli(sigmoid(X beta)); predictions from the true-beta or a trained classifier."""
    if not isinstance(spec, SynthSpec):
        spec = SynthSpec(**spec)
    rng = np.random.default_rng(spec.seed)
    beta = np.asarray(spec.beta, dtype=np.float64)

    features = _regressors(rng, spec.n, spec.p, spec.regressor_law)
    linear = features @ beta
    truths = _labels(rng, linear)

    if spec.classifier == ClassifierKind.TRAINED:
        train_features = _regressors(rng, spec.n, spec.p, spec.regressor_law)
        train_labels = _labels(rng, train_features @ beta)
        coefficients = train_logistic(train_features, train_labels)
        predictions = _threshold(coefficients[0] + features @ coefficients[1:])
    else:
        predictions = _threshold(linear)

    testset = TestSet(
        features=features,
        feature_names=tuple(f"x{j + 1}" for j in range(spec.p)),
        predictions=predictions,
        truths=truths,
        task=TaskKind.BINARY,
        source=f"synth:logistic:seed={spec.seed}",
    )
    logger.info(f"Generated {testset} (beta={list(spec.beta)}, law={spec.regressor_law})")
    return testset


def gen_scaling(n, p, seed=0):
    """Uniform features with balanced random labels and predictions, for timing runs."""
    if n < 2:
        raise InvalidSpec(f"scaling test sets need n >= 2, got {n}")
    if p < 1:
        raise InvalidSpec(f"scaling test sets need p >= 1, got {p}")
    if not 0 <= seed < 2**64:
        raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.default_rng(seed)
    features = rng.random((n, p))
    balanced = np.arange(n) % 2
    truths = rng.permutation(balanced)
    predictions = rng.permutation(balanced)
    return TestSet(
        features=features,
        feature_names=tuple(f"x{j + 1}" for j in range(p)),
        predictions=predictions,
        truths=truths,
        task=TaskKind.BINARY,
        source=f"synth:scaling:seed={seed}",
    )
