from .options import (
    DatasetOptionsSerializer,
    RocOptionsSerializer,
    SaturateOptionsSerializer,
    ScoresOptionsSerializer,
    SweepOptionsSerializer,
    SynthOptionsSerializer,
    WeightsOptionsSerializer,
)
from .results import (
    RocPointSerializer,
    SaturationRowSerializer,
    ScoreRowSerializer,
    ScoreTableSerializer,
    SweepCellSerializer,
    SweepConfigSerializer,
    SweepResultSerializer,
    VariableSummarySerializer,
    WeightVectorSerializer,
)

__all__ = [
    "DatasetOptionsSerializer",
    "SweepOptionsSerializer",
    "RocOptionsSerializer",
    "SaturateOptionsSerializer",
    "WeightsOptionsSerializer",
    "ScoresOptionsSerializer",
    "SynthOptionsSerializer",
    "WeightVectorSerializer",
    "SweepConfigSerializer",
    "SweepCellSerializer",
    "SweepResultSerializer",
    "VariableSummarySerializer",
    "RocPointSerializer",
    "ScoreRowSerializer",
    "ScoreTableSerializer",
    "SaturationRowSerializer",
]
