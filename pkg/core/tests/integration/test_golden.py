"""
Golden run on a frozen ten-row dump whose tilts are solvable by hand.

Column a takes 0/1 with mean 0.4, column b takes 0/2 with mean 1. With
alpha = 0.05 the anchors are the column extremes, so tau = +/-1 is
inadmissible and tau = +/-0.5 moves each mean halfway to an extreme.
"""

import math

import pytest

from core.models import CsvSchema, SweepConfig
from core.services import dataset, sweep

GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)

# (variable, tau) -> (er, p1, tpr, fpr)
EXPECTED = {
    ("a", 0.0): (0.4, 0.5, 0.6, 0.4),
    ("a", 0.5): (0.45, 0.5, 0.55, 0.45),
    ("a", -0.5): (11 / 30, 0.5, 19 / 30, 11 / 30),
    ("b", 0.0): (0.4, 0.5, 0.6, 0.4),
    ("b", 0.5): (0.5, 0.45, 5 / 11, 4 / 9),
    ("b", -0.5): (0.3, 0.55, 7 / 9, 4 / 11),
}

# (variable, tau) -> (lambda on the high value, share of high rows)
TILTS = {
    ("a", 0.5): (1.75, 0.5, 0.4),
    ("a", -0.5): (0.5, 4 / 3, 0.4),
    ("b", 0.5): (1.5, 0.5, 0.5),
    ("b", -0.5): (0.5, 1.5, 0.5),
}


def kl(high, low, share):
    return share * high * math.log(high) + (1 - share) * low * math.log(low)


@pytest.fixture
def golden(fixtures_dir):
    ts = dataset.load_csv(
        fixtures_dir / "frozen_dump.csv",
        CsvSchema(prediction_column="prediction", truth_column="truth"),
    )
    return sweep.sweep(ts, SweepConfig(tau_grid=GRID, alpha=0.05))


class TestGoldenSweep:
    """Tests against the hand-solved frozen dump."""

    @pytest.mark.parametrize("key", sorted(EXPECTED))
    def test_indicators(self, golden, key):
        """Should match the hand-computed weighted indicators."""
        name, tau = key
        cell = golden.cell(golden.variable_names.index(name), tau)
        er, p1, tpr, fpr = EXPECTED[key]
        assert cell.value("er") == pytest.approx(er, abs=1e-9)
        assert cell.value("p1") == pytest.approx(p1, abs=1e-9)
        assert cell.value("tpr") == pytest.approx(tpr, abs=1e-9)
        assert cell.value("fpr") == pytest.approx(fpr, abs=1e-9)

    @pytest.mark.parametrize("key", sorted(TILTS))
    def test_kl(self, golden, key):
        """Should report the KL divergence of the two-level tilt."""
        name, tau = key
        cell = golden.cell(golden.variable_names.index(name), tau)
        assert cell.kl == pytest.approx(kl(*TILTS[key]), abs=1e-9)

    def test_extremes_skipped(self, golden):
        """Should skip exactly the tau = +/-1 cells."""
        names = golden.variable_names
        skipped = sorted((names[cell.variable], cell.tau) for cell in golden.cells if cell.skipped)
        assert skipped == [("a", -1.0), ("a", 1.0), ("b", -1.0), ("b", 1.0)]
