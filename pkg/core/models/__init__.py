from .indicators import IndicatorSet, RatesMode
from .projection import ConstraintSpec, DualSolution, SolverOptions, WeightVector
from .stress import StressSpec
from .sweep import (
    RocPoint,
    SaturationRow,
    ScoreRow,
    ScoreTable,
    SweepCell,
    SweepConfig,
    SweepResult,
    VariableSummary,
)
from .synth import ClassifierKind, RegressorLaw, SynthSpec
from .testset import ColumnStats, CsvSchema, TaskKind, TestSet

__all__ = [
    "TestSet",
    "ColumnStats",
    "CsvSchema",
    "TaskKind",
    "ConstraintSpec",
    "SolverOptions",
    "DualSolution",
    "WeightVector",
    "StressSpec",
    "IndicatorSet",
    "RatesMode",
    "SweepConfig",
    "SweepCell",
    "SweepResult",
    "VariableSummary",
    "RocPoint",
    "ScoreRow",
    "ScoreTable",
    "SaturationRow",
    "SynthSpec",
    "RegressorLaw",
    "ClassifierKind",
]
