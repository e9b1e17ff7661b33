"""
Sweep types: the tau-grid configuration, per-cell results and the derived
ROC, score and saturation rows.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import InvalidSweepConfig
from core.models.indicators import RatesMode
from core.models.stress import DEFAULT_ALPHA

logger = logging.getLogger(__name__)

DEFAULT_TAU_COUNT = 21
SATURATION_GRID = (-1.0, 0.0, 1.0)
GRID_DECIMALS = 12


def default_tau_grid(count=DEFAULT_TAU_COUNT):
    """count equally spaced values from -1 to 1, rounded to drop binary artefacts."""
    if count < 1:
        raise InvalidSweepConfig(f"tau grid needs at least one point, got {count}")
    if count == 1:
        return (0.0,)
    grid = np.round(np.linspace(-1.0, 1.0, count), GRID_DECIMALS)
    return normalize_tau_grid(grid.tolist())


def normalize_tau_grid(values):
    """Sort, deduplicate and enforce the tau = 0 baseline point."""
    taus = sorted({float(round(value, GRID_DECIMALS)) + 0.0 for value in values})
    if not taus:
        raise InvalidSweepConfig("tau grid is empty")
    if taus[0] < -1.0 or taus[-1] > 1.0:
        raise InvalidSweepConfig(f"tau grid must lie within [-1, 1], got [{taus[0]}, {taus[-1]}]")
    if 0.0 not in taus:
        logger.info("Inserting the tau=0 baseline into the grid")
        taus = sorted(taus + [0.0])
    return tuple(taus)


@dataclass(frozen=True)
class SweepConfig:
    tau_grid: tuple = field(default_factory=default_tau_grid)
    alpha: float = DEFAULT_ALPHA
    variables: tuple | None = None
    indicators: tuple | None = None
    rates_mode: str = RatesMode.STANDARD

    def __post_init__(self):
        object.__setattr__(self, "tau_grid", normalize_tau_grid(self.tau_grid))
        if not 0.0 < self.alpha < 0.5:
            raise InvalidSweepConfig(f"alpha={self.alpha} outside (0, 0.5)")
        if self.rates_mode not in RatesMode.values:
            raise InvalidSweepConfig(f"unknown rates mode {self.rates_mode!r}")
        if self.variables is not None:
            object.__setattr__(self, "variables", tuple(int(j) for j in self.variables))
        if self.indicators is not None:
            object.__setattr__(self, "indicators", tuple(self.indicators))

    @classmethod
    def saturation(cls, **kwargs):
        """Image-style preset: the three-point grid {-1, 0, 1}."""
        return cls(tau_grid=SATURATION_GRID, **kwargs)

    @property
    def is_saturation(self):
        return self.tau_grid == SATURATION_GRID

    def tau_index(self, tau, atol=1e-9):
        for index, value in enumerate(self.tau_grid):
            if abs(value - tau) <= atol:
                return index
        return None

    def traversal_order(self):
        """Grid indices from tau = 0 outward: 0, then upward, then downward."""
        zero = self.tau_grid.index(0.0)
        upward = list(range(zero, len(self.tau_grid)))
        downward = list(range(zero - 1, -1, -1))
        return upward, downward


@dataclass(frozen=True)
class SweepCell:
    """One (variable, tau) grid cell: indicator values, or a skip marker with its reason."""

    variable: int
    variable_name: str
    tau: float
    indicators: object = None
    skipped: bool = False
    reason: str = ""
    target: float | None = None
    kl: float | None = None
    xi: float | None = None
    iterations: int = 0
    converged: bool = False
    residual: float | None = None

    def value(self, indicator):
        if self.skipped or self.indicators is None:
            return None
        return self.indicators.values.get(indicator)


@dataclass(frozen=True)
class VariableSummary:
    variable: int
    variable_name: str
    solved: int
    skipped: int
    max_iterations: int
    max_residual: float
    kl_min: float | None
    kl_max: float | None


@dataclass(frozen=True, eq=False)
class SweepResult:
    config: SweepConfig
    variable_names: tuple
    cells: tuple
    metadata: dict = field(default_factory=dict)
    timing: float = field(default=0.0, compare=False)

    def cell(self, variable, tau):
        for cell in self.cells:
            if cell.variable == variable and abs(cell.tau - tau) <= 1e-9:
                return cell
        return None

    def cells_for(self, variable):
        return [cell for cell in self.cells if cell.variable == variable]

    @property
    def variables(self):
        seen = []
        for cell in self.cells:
            if cell.variable not in seen:
                seen.append(cell.variable)
        return seen

    @property
    def indicator_names(self):
        for cell in self.cells:
            if not cell.skipped and cell.indicators is not None:
                return cell.indicators.names
        return tuple(self.config.indicators or ())

    @property
    def skipped_count(self):
        return sum(1 for cell in self.cells if cell.skipped)

    @property
    def has_skips(self):
        return self.skipped_count > 0

    def curve(self, variable, indicator):
        """(tau, value) pairs of the admissible cells, in grid order."""
        return [
            (cell.tau, cell.value(indicator))
            for cell in self.cells_for(variable)
            if not cell.skipped and cell.value(indicator) is not None
        ]

    def summaries(self):
        summaries = []
        for variable in self.variables:
            cells = self.cells_for(variable)
            solved = [cell for cell in cells if not cell.skipped]
            kls = [cell.kl for cell in solved if cell.kl is not None]
            summaries.append(
                VariableSummary(
                    variable=variable,
                    variable_name=cells[0].variable_name,
                    solved=len(solved),
                    skipped=len(cells) - len(solved),
                    max_iterations=max((cell.iterations for cell in solved), default=0),
                    max_residual=max((cell.residual or 0.0 for cell in solved), default=0.0),
                    kl_min=min(kls) if kls else None,
                    kl_max=max(kls) if kls else None,
                )
            )
        return summaries


@dataclass(frozen=True)
class RocPoint:
    tau: float
    fpr: float
    tpr: float


@dataclass(frozen=True)
class ScoreRow:
    variable: str
    score: float


@dataclass(frozen=True)
class ScoreTable:
    """Variables ranked by I(tau_b) - I(tau_a); excluded lists (variable, reason) pairs."""

    indicator: str
    tau_a: float
    tau_b: float
    rows: tuple
    excluded: tuple = ()


@dataclass(frozen=True)
class SaturationRow:
    variable: str
    class_id: int
    up: float
    down: float
