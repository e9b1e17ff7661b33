"""
Pytest fixtures for engine tests.
"""

import logging
from pathlib import Path

import numpy as np
import pytest

from core.models import TaskKind, TestSet

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def make_testset():
    """Build a TestSet from plain lists; feature names default to x1..xp."""

    def build(features, predictions, truths, task=TaskKind.BINARY, names=None, n_classes=None):
        features = np.asarray(features, dtype=np.float64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        names = names or tuple(f"x{j + 1}" for j in range(features.shape[1]))
        return TestSet(
            features=features,
            feature_names=tuple(names),
            predictions=predictions,
            truths=truths,
            task=task,
            n_classes=n_classes,
        )

    return build


@pytest.fixture
def random_testset():
    """Random test set of a given task, reproducible from its seed."""

    def build(seed, n=200, p=3, task=TaskKind.BINARY, n_classes=3):
        rng = np.random.default_rng(seed)
        features = rng.normal(size=(n, p)) * rng.uniform(0.5, 5.0, size=p)
        if task == TaskKind.REGRESSION:
            truths = features @ rng.normal(size=p) + rng.normal(size=n)
            predictions = truths + rng.normal(scale=0.5, size=n)
            n_classes = None
        else:
            k = 2 if task == TaskKind.BINARY else n_classes
            truths = rng.integers(0, k, size=n)
            predictions = np.where(rng.random(n) < 0.7, truths, rng.integers(0, k, size=n))
            n_classes = k
        return TestSet(
            features=features,
            feature_names=tuple(f"v{j}" for j in range(p)),
            predictions=predictions,
            truths=truths,
            task=task,
            n_classes=n_classes,
        )

    return build


@pytest.fixture
def binary_testset(make_testset):
    """Four rows, two features."""
    return make_testset(
        [[1.0, 10.0], [2.0, 20.0], [3.0, 15.0], [4.0, 40.0]],
        predictions=[0, 1, 1, 0],
        truths=[0, 1, 0, 0],
        names=("a", "b"),
    )


@pytest.fixture
def two_level_testset(make_testset):
    """Ten rows: a takes 0/1 (mean 0.4), b takes 0/2 (mean 1); baseline ER 0.4."""
    a = [1, 1, 1, 1, 0, 0, 0, 0, 0, 0]
    b = [0, 2, 0, 2, 0, 2, 0, 2, 0, 2]
    return make_testset(
        np.column_stack([a, b]),
        predictions=[1, 1, 0, 0, 1, 1, 0, 0, 1, 0],
        truths=[1, 0, 0, 1, 1, 1, 0, 1, 0, 0],
        names=("a", "b"),
    )


@pytest.fixture
def ramp_testset(make_testset):
    """One feature holding 0..99, alternating labels."""
    labels = np.arange(100) % 2
    return make_testset(np.arange(100.0), predictions=labels, truths=labels[::-1], names=("ramp",))


@pytest.fixture
def csv_file(tmp_path):
    """Write CSV text to a temporary file and return its path."""

    def write(text, name="dump.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def engine_logs(caplog):
    """caplog wired to the non-propagating core and solver loggers."""
    loggers = [logging.getLogger(name) for name in ("core", "solver")]
    for logger in loggers:
        logger.addHandler(caplog.handler)
    caplog.set_level(logging.DEBUG, logger="core")
    caplog.set_level(logging.DEBUG, logger="solver")
    yield caplog
    for logger in loggers:
        logger.removeHandler(caplog.handler)
