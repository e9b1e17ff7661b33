"""
IndicatorSet: the black-box indicators measured on one re-weighted test set.
"""

from dataclasses import dataclass, field

from django.db import models


class RatesMode(models.TextChoices):
    STANDARD = "standard", "Confusion-matrix conditional rates"
    AS_PRINTED = "as-printed", "Literal displayed formulas"


BINARY_INDICATORS = ("er", "p1", "fpr", "tpr")
REGRESSION_INDICATORS = ("mean", "variance", "rmse")


def multiclass_indicators(n_classes):
    return ("er",) + tuple(f"p{j}" for j in range(n_classes))


@dataclass(frozen=True)
class IndicatorSet:
    """
    Indicator values keyed by name (er, p1, fpr, tpr, p0..p{k-1}, mean,
    variance, rmse) plus the stress coordinates and KL of the weighting.
    """

    values: dict = field(default_factory=dict)
    variable: str | None = None
    tau: float | None = None
    kl: float = 0.0

    def __getitem__(self, name):
        return self.values[name]

    def __contains__(self, name):
        return name in self.values

    @property
    def names(self):
        return tuple(self.values)
