"""
Test-set loading and per-column order statistics.

CSV format: UTF-8, comma separated, header row, '.' as decimal point,
scientific notation accepted. Every column other than the prediction and
truth columns is a numeric feature, in header order.
"""

import logging
import math
import re
from pathlib import Path

import numpy as np
import pandas as pd

from core.exceptions import (
    DatasetNotFound,
    IndexOutOfRange,
    MalformedCsv,
    NonNumericFeature,
    RhoOutOfRange,
    TooFewRows,
    UnknownVariable,
)
from core.models import ColumnStats, CsvSchema, TaskKind, TestSet
from core.models.testset import check_labels

logger = logging.getLogger(__name__)

PARSER_LINE = re.compile(r"line (\d+)")

# floor(n * rho) tolerates this many ulps of representation error, e.g. 0.95 * 100.
QUANTILE_GUARD_ULPS = 4


def _read_header(path):
    try:
        header = pd.read_csv(
            path,
            header=None,
            nrows=1,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as exc:
        raise MalformedCsv("file is empty", row=0) from exc
    except UnicodeDecodeError as exc:
        raise MalformedCsv("file is not valid UTF-8") from exc
    names = [str(name).strip() for name in header.iloc[0].tolist()]
    for position, name in enumerate(names):
        if not name:
            raise MalformedCsv("empty column name in header", row=0, column=position)
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise MalformedCsv(f"duplicate column names {duplicates}", row=0, column=duplicates[0])
    return names


def _read_cells(path, names):
    try:
        raw = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.ParserError as exc:
        match = PARSER_LINE.search(str(exc))
        # Parser lines are 1-based and count the header.
        row = int(match.group(1)) - 2 if match else None
        raise MalformedCsv("wrong number of fields", row=row) from exc
    raw.columns = names
    return raw


def _bad_cells(raw):
    """Boolean frame: True where a cell is missing, non-numeric or non-finite."""
    numeric = raw.apply(pd.to_numeric, errors="coerce")
    return numeric.isna() | ~np.isfinite(numeric.astype(np.float64))


def infer_classes(*label_columns):
    """Class count of a multiclass dump: one more than the largest label seen."""
    largest = max(float(np.max(column)) for column in label_columns)
    return int(largest) + 1


def load_csv(path, schema):
    """
    Load a test-set dump.

    Rows with any missing or non-numeric cell are rejected together: the
    error lists every offending row index (0-based, header excluded).
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFound(path)
    if not isinstance(schema, CsvSchema):
        schema = CsvSchema(**schema)

    names = _read_header(path)
    for column in (schema.prediction_column, schema.truth_column):
        if column not in names:
            raise MalformedCsv("designated column missing from header", row=0, column=column)
    if schema.prediction_column == schema.truth_column:
        raise MalformedCsv(
            "prediction and truth must be distinct columns", column=schema.truth_column
        )

    raw = _read_cells(path, names)
    if len(raw) < 2:
        raise TooFewRows(len(raw))
    bad = _bad_cells(raw)
    if bad.to_numpy().any():
        rows = np.nonzero(bad.to_numpy().any(axis=1))[0].tolist()
        columns = [name for name in names if bad[name].any()]
        raise NonNumericFeature(rows, columns)

    values = raw.astype(np.float64)
    feature_names = [
        name for name in names if name not in (schema.prediction_column, schema.truth_column)
    ]
    if not feature_names:
        raise MalformedCsv("no feature columns besides prediction and truth")

    predictions = values[schema.prediction_column].to_numpy()
    truths = values[schema.truth_column].to_numpy()
    task = TaskKind(schema.task)
    n_classes = schema.n_classes
    if task == TaskKind.BINARY:
        n_classes = 2
    if task == TaskKind.MULTICLASS and n_classes is None:
        check_labels(predictions, schema.prediction_column, np.inf)
        check_labels(truths, schema.truth_column, np.inf)
        n_classes = infer_classes(predictions, truths)
        logger.info(f"Inferred {n_classes} classes from {path.name}")
    if n_classes is not None and task != TaskKind.REGRESSION:
        check_labels(predictions, schema.prediction_column, n_classes)
        check_labels(truths, schema.truth_column, n_classes)

    testset = TestSet(
        features=values[feature_names].to_numpy(),
        feature_names=tuple(feature_names),
        predictions=predictions,
        truths=truths,
        task=task,
        n_classes=n_classes,
        source=str(path),
    )
    logger.info(f"Loaded {testset} from {path}")
    return testset


def save_csv(ts, path, prediction_column="prediction", truth_column="truth"):
    """Write a TestSet in the load_csv format; floats use shortest round-trip formatting."""
    path = Path(path)
    frame = pd.DataFrame(np.asarray(ts.features), columns=list(ts.feature_names))
    frame[prediction_column] = np.asarray(ts.predictions)
    frame[truth_column] = np.asarray(ts.truths)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def check_index(ts, j0):
    if isinstance(j0, bool) or not isinstance(j0, (int, np.integer)) or not 0 <= j0 < ts.p:
        raise IndexOutOfRange(j0, ts.p)
    return int(j0)


def select_variables(ts, selectors=None):
    """Resolve feature names or indices to a list of indices (all features when None)."""
    if not selectors:
        return list(range(ts.p))
    indices = []
    for selector in selectors:
        if isinstance(selector, str):
            if selector in ts.feature_names:
                index = ts.feature_names.index(selector)
            elif selector.strip().lstrip("-").isdigit():
                index = check_index(ts, int(selector))
            else:
                raise UnknownVariable(selector)
        else:
            index = check_index(ts, selector)
        if index not in indices:
            indices.append(index)
    return indices


def column_stats(ts, j0):
    j0 = check_index(ts, j0)
    column = ts.column(j0)
    minimum = float(column.min())
    maximum = float(column.max())
    # Summation rounding can push the mean of a near-constant column past its extremes.
    mean = min(max(float(column.mean()), minimum), maximum)
    sorted_values = np.sort(column, kind="stable")
    sorted_values.flags.writeable = False
    return ColumnStats(
        index=j0,
        minimum=minimum,
        maximum=maximum,
        mean=mean,
        sorted_values=sorted_values,
    )


def empirical_quantile(stats, rho):
    """Lower empirical quantile sorted[floor(n * rho)], index clamped to [0, n - 1]."""
    if not 0.0 <= rho < 1.0:
        raise RhoOutOfRange(rho)
    product = stats.n * rho
    index = math.floor(product + QUANTILE_GUARD_ULPS * math.ulp(product))
    index = min(max(index, 0), stats.n - 1)
    return float(stats.sorted_values[index])
