"""
Weighted indicators of the black box on a re-weighted test set.

Every indicator is a weighted average (1/n) sum_i lambda_i g(pred_i, truth_i)
or a ratio of two such sums; with all lambda_i = 1 they reduce to the usual
unweighted statistics.
"""

import logging
import math
import re

import numpy as np

from core.exceptions import EmptyClassMass, TaskMismatch, UnknownClass
from core.models import IndicatorSet, RatesMode, TaskKind
from core.models.indicators import BINARY_INDICATORS, REGRESSION_INDICATORS, multiclass_indicators

logger = logging.getLogger(__name__)

PROPORTION = re.compile(r"^p(\d+)$")


def _lambdas(w):
    return np.asarray(getattr(w, "lambdas", w), dtype=np.float64)


def _weighted_mean(lambdas, values):
    return float(np.einsum("i,i->", lambdas, np.asarray(values, dtype=np.float64))) / len(lambdas)


def _require_classification(ts, indicator):
    if not ts.is_classification:
        raise TaskMismatch(indicator, ts.task)


def _require_regression(ts, indicator):
    if ts.task != TaskKind.REGRESSION:
        raise TaskMismatch(indicator, ts.task)


def error_rate(w, ts):
    """ER = (1/n) sum_i lambda_i 1{pred_i != truth_i}."""
    _require_classification(ts, "er")
    return _weighted_mean(_lambdas(w), ts.predictions != ts.truths)


def prop_predicted(w, ts, class_id=1):
    """(1/n) sum_i lambda_i 1{pred_i = class_id}."""
    _require_classification(ts, f"p{class_id}")
    if isinstance(class_id, bool) or not isinstance(class_id, (int, np.integer)):
        raise UnknownClass(class_id, ts.n_classes)
    if not 0 <= class_id < ts.n_classes:
        raise UnknownClass(class_id, ts.n_classes)
    return _weighted_mean(_lambdas(w), ts.predictions == class_id)


def fpr_tpr(w, ts, mode=RatesMode.STANDARD):
    """
    False and true positive rates under the weighting.

    standard: conditional rates of the weighted confusion matrix.
    as-printed: FPR* = sum lambda 1{truth != 1} / sum lambda 1{pred = 1} and
    TPR* = sum lambda 1{pred = 1} / sum lambda 1{truth = 1}.
    """
    if ts.task != TaskKind.BINARY:
        raise TaskMismatch("fpr", ts.task)
    lambdas = _lambdas(w)
    predicted = ts.predictions == 1
    positive = ts.truths == 1

    if RatesMode(mode) == RatesMode.AS_PRINTED:
        predicted_mass = _weighted_mean(lambdas, predicted)
        positive_mass = _weighted_mean(lambdas, positive)
        if predicted_mass == 0.0:
            raise EmptyClassMass("predicted positive")
        if positive_mass == 0.0:
            raise EmptyClassMass("truth positive")
        return {
            "fpr": _weighted_mean(lambdas, ~positive) / predicted_mass,
            "tpr": predicted_mass / positive_mass,
        }

    positive_mass = _weighted_mean(lambdas, positive)
    negative_mass = _weighted_mean(lambdas, ~positive)
    if positive_mass == 0.0:
        raise EmptyClassMass("truth positive")
    if negative_mass == 0.0:
        raise EmptyClassMass("truth negative")
    return {
        "fpr": _weighted_mean(lambdas, predicted & ~positive) / negative_mass,
        "tpr": _weighted_mean(lambdas, predicted & positive) / positive_mass,
    }


def regression_mean(w, ts):
    """M = (1/n) sum_i lambda_i pred_i."""
    _require_regression(ts, "mean")
    return _weighted_mean(_lambdas(w), ts.predictions)


def regression_variance(w, ts):
    """V = (1/n) sum_i lambda_i (pred_i - M)^2."""
    _require_regression(ts, "variance")
    lambdas = _lambdas(w)
    mean = _weighted_mean(lambdas, ts.predictions)
    return max(_weighted_mean(lambdas, (ts.predictions - mean) ** 2), 0.0)


def regression_rmse(w, ts):
    """RMSE = sqrt((1/n) sum_i lambda_i (pred_i - truth_i)^2)."""
    _require_regression(ts, "rmse")
    return math.sqrt(_weighted_mean(_lambdas(w), (ts.predictions - ts.truths) ** 2))


def default_indicators(ts):
    if ts.task == TaskKind.BINARY:
        return BINARY_INDICATORS
    if ts.task == TaskKind.MULTICLASS:
        return multiclass_indicators(ts.n_classes)
    return REGRESSION_INDICATORS


def available_indicators(ts):
    """Every indicator name defined for the task of ts."""
    if ts.task == TaskKind.BINARY:
        return ("er", "p0", "p1", "fpr", "tpr")
    return default_indicators(ts)


def check_indicators(ts, names):
    """Validate a selection against the task; returns it as a tuple in the given order."""
    if not names:
        return default_indicators(ts)
    available = available_indicators(ts)
    for name in names:
        if name not in available:
            match = PROPORTION.match(name)
            if match and ts.is_classification:
                raise UnknownClass(int(match.group(1)), ts.n_classes)
            raise TaskMismatch(name, ts.task)
    return tuple(dict.fromkeys(names))


def compute(w, ts, names=None, rates_mode=RatesMode.STANDARD, variable=None, tau=None):
    """Evaluate the selected indicators (the task defaults when names is empty)."""
    names = check_indicators(ts, names)
    values = {}
    rates = None
    for name in names:
        if name == "er":
            values[name] = error_rate(w, ts)
        elif name in ("fpr", "tpr"):
            if rates is None:
                rates = fpr_tpr(w, ts, rates_mode)
            values[name] = rates[name]
        elif name == "mean":
            values[name] = regression_mean(w, ts)
        elif name == "variance":
            values[name] = regression_variance(w, ts)
        elif name == "rmse":
            values[name] = regression_rmse(w, ts)
        else:
            values[name] = prop_predicted(w, ts, int(PROPORTION.match(name).group(1)))
    return IndicatorSet(values=values, variable=variable, tau=tau, kl=getattr(w, "kl", 0.0))
