"""
TestSet and ColumnStats: the immutable test-set dump the engine re-weights.
"""

from dataclasses import dataclass, field

import numpy as np
from django.db import models

from core.exceptions import (
    LabelOutOfRange,
    MalformedCsv,
    NonNumericFeature,
    TooFewRows,
)


class TaskKind(models.TextChoices):
    BINARY = "binary", "Binary classification"
    MULTICLASS = "multiclass", "Multiclass classification"
    REGRESSION = "regression", "Regression"


@dataclass(frozen=True)
class CsvSchema:
    """Which CSV columns hold the prediction and truth, and the task they encode."""

    prediction_column: str
    truth_column: str
    task: str = TaskKind.BINARY
    n_classes: int | None = None


def _frozen(values, dtype):
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


def check_labels(values, column, n_classes):
    """Raise LabelOutOfRange unless every value is an integer label in 0..n_classes-1."""
    values = np.asarray(values, dtype=np.float64)
    invalid = (values != np.round(values)) | (values < 0) | (values > n_classes - 1)
    if invalid.any():
        allowed = f"{{0, ..., {n_classes - 1}}}"
        raise LabelOutOfRange(column, np.nonzero(invalid)[0].tolist(), allowed)


@dataclass(frozen=True, eq=False)
class TestSet:
    """
    A fixed test set: n observations of p numeric features together with the
    black-box prediction and the ground truth of each observation.

    For classification tasks predictions and truths are integer label ids
    (0/1 for binary, 0..k-1 for multiclass); for regression they are reals.
    All arrays are copied and made read-only on construction.
    """

    __test__ = False  # not a pytest class

    features: np.ndarray
    feature_names: tuple
    predictions: np.ndarray
    truths: np.ndarray
    task: str = TaskKind.BINARY
    n_classes: int | None = None
    source: str = field(default="", compare=False)

    def __post_init__(self):
        task = TaskKind(self.task)
        features = np.asarray(self.features, dtype=np.float64)
        if features.ndim != 2:
            raise MalformedCsv(f"features must be a 2-D table, got {features.ndim} dimension(s)")
        n, p = features.shape
        if n < 2:
            raise TooFewRows(n)
        if p < 1:
            raise MalformedCsv("at least one feature column is required")

        names = tuple(str(name) for name in self.feature_names)
        if len(names) != p:
            raise MalformedCsv(f"{len(names)} feature names for {p} feature columns")
        if any(not name for name in names):
            raise MalformedCsv("feature names must be nonempty")
        if len(set(names)) != p:
            raise MalformedCsv("feature names must be distinct")

        bad = ~np.isfinite(features)
        if bad.any():
            rows, cols = np.nonzero(bad)
            raise NonNumericFeature(
                sorted(set(rows.tolist())), {names[c] for c in cols.tolist()}
            )

        n_classes = self.n_classes
        if task == TaskKind.BINARY:
            n_classes = 2
        elif task == TaskKind.MULTICLASS and (n_classes is None or n_classes < 2):
            raise MalformedCsv(f"multiclass task needs at least 2 classes, got {n_classes}")
        elif task == TaskKind.REGRESSION:
            n_classes = None

        columns = {}
        for label, values in (("prediction", self.predictions), ("truth", self.truths)):
            raw = np.asarray(values, dtype=np.float64).reshape(-1)
            if raw.shape[0] != n:
                raise MalformedCsv(f"{label} column has {raw.shape[0]} rows, features have {n}")
            if not np.isfinite(raw).all():
                raise NonNumericFeature(np.nonzero(~np.isfinite(raw))[0].tolist(), {label})
            if n_classes is not None:
                check_labels(raw, label, n_classes)
                columns[label] = _frozen(raw, np.int64)
            else:
                columns[label] = _frozen(raw, np.float64)

        object.__setattr__(self, "task", task)
        object.__setattr__(self, "n_classes", n_classes)
        object.__setattr__(self, "features", _frozen(features, np.float64))
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "predictions", columns["prediction"])
        object.__setattr__(self, "truths", columns["truth"])

    def __str__(self):
        kind = self.task if self.n_classes in (None, 2) else f"{self.task}({self.n_classes})"
        return f"TestSet n={self.n} p={self.p} task={kind}"

    @property
    def n(self):
        return self.features.shape[0]

    @property
    def p(self):
        return self.features.shape[1]

    @property
    def is_classification(self):
        return self.task in (TaskKind.BINARY, TaskKind.MULTICLASS)

    def column(self, j0):
        return self.features[:, j0]


@dataclass(frozen=True, eq=False)
class ColumnStats:
    """Order statistics of one feature column: min, max, mean and a stable sort."""

    index: int
    minimum: float
    maximum: float
    mean: float
    sorted_values: np.ndarray

    @property
    def n(self):
        return self.sorted_values.shape[0]

    @property
    def is_degenerate(self):
        return self.minimum == self.maximum

    @property
    def is_binary_valued(self):
        return np.unique(self.sorted_values).shape[0] <= 2
