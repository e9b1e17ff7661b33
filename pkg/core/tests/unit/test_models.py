"""
Unit tests for the engine value types.
"""

import numpy as np
import pytest

from core.exceptions import (
    AlphaOutOfRange,
    InvalidSweepConfig,
    LabelOutOfRange,
    MalformedCsv,
    NonFiniteInput,
    NonNumericFeature,
    TauOutOfRange,
    TooFewRows,
)
from core.models import (
    ConstraintSpec,
    IndicatorSet,
    SolverOptions,
    StressSpec,
    SweepCell,
    SweepConfig,
    SweepResult,
    TaskKind,
    TestSet,
)
from core.models.sweep import default_tau_grid, normalize_tau_grid


def build(features, predictions, truths, **kwargs):
    features = np.asarray(features, dtype=float)
    names = tuple(f"x{j}" for j in range(features.shape[1]))
    return TestSet(features, names, predictions, truths, **kwargs)


class TestTestSet:
    """Tests for TestSet validation."""

    def test_read_only_copies(self):
        """Should copy the inputs and freeze every array."""
        features = np.array([[1.0], [2.0]])
        ts = build(features, [0, 1], [1, 1])
        features[0, 0] = 99.0
        assert ts.features[0, 0] == 1.0
        with pytest.raises(ValueError):
            ts.features[0, 0] = 5.0
        assert ts.predictions.dtype == np.int64

    def test_str(self):
        """Should describe size and task."""
        ts = build(
            [[1.0], [2.0], [3.0]], [0, 1, 2], [2, 1, 0], task=TaskKind.MULTICLASS, n_classes=3
        )
        assert str(ts) == "TestSet n=3 p=1 task=multiclass(3)"

    def test_too_few_rows(self):
        """Should reject a single observation."""
        with pytest.raises(TooFewRows):
            build([[1.0]], [0], [0])

    def test_non_finite_feature(self):
        """Should report the rows and columns holding non-finite values."""
        with pytest.raises(NonNumericFeature) as exc:
            build([[1.0, np.nan], [2.0, 3.0], [np.inf, 1.0]], [0, 1, 0], [0, 1, 1])
        assert exc.value.rows == [0, 2]
        assert exc.value.columns == ["x0", "x1"]

    def test_binary_label_out_of_range(self):
        """Should reject a truth of 2 on a binary task."""
        with pytest.raises(LabelOutOfRange) as exc:
            build([[1.0], [2.0]], [0, 1], [0, 2])
        assert exc.value.rows == [1]

    def test_fractional_label(self):
        """Should reject non-integer class labels."""
        with pytest.raises(LabelOutOfRange):
            build([[1.0], [2.0]], [0, 0.5], [0, 1])

    def test_regression_keeps_reals(self):
        """Should keep real-valued predictions on regression tasks."""
        ts = build([[1.0], [2.0]], [0.25, 3.5], [1.0, 2.0], task=TaskKind.REGRESSION)
        assert ts.predictions.tolist() == [0.25, 3.5]
        assert ts.n_classes is None
        assert not ts.is_classification

    def test_mismatched_lengths(self):
        """Should reject label columns of the wrong length."""
        with pytest.raises(MalformedCsv):
            build([[1.0], [2.0], [3.0]], [0, 1], [0, 1, 1])

    def test_duplicate_names(self):
        """Should reject repeated feature names."""
        with pytest.raises(MalformedCsv):
            TestSet(np.ones((2, 2)), ("a", "a"), [0, 1], [0, 1])

    def test_multiclass_needs_classes(self):
        """Should reject a multiclass task without a class count."""
        with pytest.raises(MalformedCsv):
            build([[1.0], [2.0]], [0, 1], [0, 1], task=TaskKind.MULTICLASS)


class TestStressSpec:
    """Tests for StressSpec."""

    def test_defaults(self):
        """Should default alpha to 0.05."""
        assert StressSpec(variable=2, tau=-0.5).alpha == 0.05

    def test_tau_out_of_range(self):
        """Should reject tau outside [-1, 1]."""
        with pytest.raises(TauOutOfRange):
            StressSpec(variable=0, tau=1.2)

    def test_alpha_out_of_range(self):
        """Should reject alpha outside (0, 0.5)."""
        with pytest.raises(AlphaOutOfRange):
            StressSpec(variable=0, tau=0.0, alpha=0.5)


class TestConstraintSpec:
    """Tests for ConstraintSpec."""

    def test_vector_promoted(self):
        """Should treat a vector as an n x 1 map with default labels."""
        spec = ConstraintSpec(phi=[1.0, 2.0, 4.0], target=2.0, labels=())
        assert spec.phi.shape == (3, 1)
        assert spec.target.tolist() == [2.0]
        assert spec.labels == ("phi0",)
        assert spec.scale.tolist() == [3.0]

    def test_target_shape(self):
        """Should reject a target of the wrong dimension."""
        with pytest.raises(NonFiniteInput):
            ConstraintSpec(phi=np.ones((3, 2)), target=[1.0], labels=())

    def test_non_finite(self):
        """Should reject non-finite constraint values."""
        with pytest.raises(NonFiniteInput):
            ConstraintSpec(phi=[1.0, np.nan], target=1.0, labels=())


class TestSolverOptions:
    """Tests for SolverOptions."""

    def test_from_settings(self, settings):
        """Should read tolerances from the ENGINE settings and apply overrides."""
        settings.ENGINE = {**settings.ENGINE, "TOL_ABS": 1e-12, "MAX_ITER": 40}
        opts = SolverOptions.from_settings(max_iter=7)
        assert opts.tol_abs == 1e-12
        assert opts.tol_rel == 1e-9
        assert opts.max_iter == 7

    def test_tolerance(self):
        """Should scale the relative tolerance by each coordinate's spread."""
        spec = ConstraintSpec(phi=[[0.0, 0.0], [10.0, 1.0]], target=[5.0, 0.5], labels=("a", "b"))
        tolerance = SolverOptions(tol_abs=1e-10, tol_rel=1e-9).tolerance(spec)
        assert tolerance.tolist() == pytest.approx([1e-10 + 1e-8, 1e-10 + 1e-9])


class TestSweepConfig:
    """Tests for SweepConfig and the tau grid helpers."""

    def test_default_grid(self):
        """Should default to 21 points spaced 0.1 apart."""
        grid = SweepConfig().tau_grid
        assert len(grid) == 21
        assert grid[0] == -1.0 and grid[10] == 0.0 and grid[-1] == 1.0
        assert grid[13] == 0.3

    def test_even_count_gets_zero(self):
        """Should insert tau = 0 into an even-sized grid."""
        grid = default_tau_grid(4)
        assert len(grid) == 5
        assert grid[2] == 0.0
        assert grid[1] == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_single_point(self):
        """Should reduce a one-point grid to the baseline."""
        assert default_tau_grid(1) == (0.0,)

    def test_normalize(self):
        """Should sort, deduplicate and fold -0.0 into 0.0."""
        assert normalize_tau_grid([0.5, -0.0, 0.5, -0.5]) == (-0.5, 0.0, 0.5)

    @pytest.mark.parametrize(
        "kwargs",
        [{"tau_grid": (0.0, 2.0)}, {"tau_grid": ()}, {"alpha": 0.6}, {"rates_mode": "odd"}],
    )
    def test_invalid(self, kwargs):
        """Should reject bad grids, anchors and rate modes."""
        with pytest.raises(InvalidSweepConfig):
            SweepConfig(**kwargs)

    def test_saturation_preset(self):
        """Should build the three-point grid."""
        cfg = SweepConfig.saturation(alpha=0.1)
        assert cfg.tau_grid == (-1.0, 0.0, 1.0)
        assert cfg.is_saturation
        assert cfg.alpha == 0.1

    def test_traversal_order(self):
        """Should walk up from zero, then down from just below it."""
        cfg = SweepConfig(tau_grid=(-1.0, -0.5, 0.0, 0.5, 1.0))
        assert cfg.traversal_order() == ([2, 3, 4], [1, 0])
        assert cfg.tau_index(0.5 + 1e-12) == 3
        assert cfg.tau_index(0.25) is None


class TestSweepResult:
    """Tests for SweepResult helpers."""

    @pytest.fixture
    def result(self):
        cells = (
            SweepCell(0, "a", 0.0, IndicatorSet({"er": 0.2}), kl=0.0, iterations=0, residual=0.0),
            SweepCell(0, "a", 1.0, IndicatorSet({"er": 0.3}), kl=0.4, iterations=5, residual=1e-12),
            SweepCell(1, "b", 0.0, IndicatorSet({"er": 0.2}), kl=0.0, iterations=0, residual=0.0),
            SweepCell(1, "b", 1.0, skipped=True, reason="inadmissible"),
        )
        cfg = SweepConfig(tau_grid=(0.0, 1.0), variables=(0, 1), indicators=("er",))
        return SweepResult(config=cfg, variable_names=("a", "b"), cells=cells)

    def test_lookup(self, result):
        """Should find cells by variable and tau."""
        assert result.cell(0, 1.0).value("er") == 0.3
        assert result.cell(1, 1.0).value("er") is None
        assert result.cell(2, 0.0) is None

    def test_curve(self, result):
        """Should list only the admissible points of a curve."""
        assert result.curve(0, "er") == [(0.0, 0.2), (1.0, 0.3)]
        assert result.curve(1, "er") == [(0.0, 0.2)]

    def test_skips(self, result):
        """Should count skipped cells."""
        assert result.skipped_count == 1
        assert result.has_skips
        assert result.indicator_names == ("er",)

    def test_summaries(self, result):
        """Should summarize solved and skipped cells per variable."""
        first, second = result.summaries()
        assert (first.solved, first.skipped, first.max_iterations) == (2, 0, 5)
        assert (first.kl_min, first.kl_max) == (0.0, 0.4)
        assert (second.solved, second.skipped) == (1, 1)
