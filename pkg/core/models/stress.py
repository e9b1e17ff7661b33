"""
StressSpec: which variable is stressed, how hard (tau) and with which quantile anchors (alpha).
"""

from dataclasses import dataclass

from core.exceptions import AlphaOutOfRange, TauOutOfRange

DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class StressSpec:
    variable: int
    tau: float
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not -1.0 <= self.tau <= 1.0:
            raise TauOutOfRange(self.tau)
        if not 0.0 < self.alpha < 0.5:
            raise AlphaOutOfRange(self.alpha)
