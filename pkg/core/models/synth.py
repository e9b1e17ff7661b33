"""
SynthSpec: parameters of the synthetic logistic validation dataset.
"""

from dataclasses import dataclass

from django.db import models

from core.exceptions import InvalidSpec

DEFAULT_BETA = (-4.0, 2.0, 0.0, 2.0, 4.0)


class RegressorLaw(models.TextChoices):
    UNIFORM = "uniform", "Independent uniform on [0, 1]"
    NORMAL = "normal", "Independent standard normal"


class ClassifierKind(models.TextChoices):
    TRUE_MODEL = "true", "Threshold classifier on the true coefficients"
    TRAINED = "trained", "Built-in logistic trainer"


@dataclass(frozen=True)
class SynthSpec:
    n: int
    beta: tuple = DEFAULT_BETA
    seed: int = 0
    regressor_law: str = RegressorLaw.UNIFORM
    classifier: str = ClassifierKind.TRUE_MODEL

    def __post_init__(self):
        if self.n < 100:
            raise InvalidSpec(f"synthetic test sets need n >= 100, got {self.n}")
        if len(self.beta) < 1:
            raise InvalidSpec("beta needs at least one coefficient")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.regressor_law not in RegressorLaw.values:
            raise InvalidSpec(f"unknown regressor law {self.regressor_law!r}")
        if self.classifier not in ClassifierKind.values:
            raise InvalidSpec(f"unknown classifier {self.classifier!r}")
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))

    @property
    def p(self):
        return len(self.beta)
