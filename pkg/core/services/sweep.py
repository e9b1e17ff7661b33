"""
Tau-grid sweeps: per variable, walk the grid from tau = 0 outward, project,
and evaluate the indicators; derived ROC sequences, score tables, saturation
maps and curve slopes are read off the result.
"""

import logging
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from core.exceptions import EngineError, IndicatorAbsent, TaskMismatch, TauNotOnGrid
from core.models import (
    RocPoint,
    SaturationRow,
    ScoreRow,
    ScoreTable,
    StressSpec,
    SweepCell,
    SweepConfig,
    SweepResult,
    TaskKind,
)
from core.models.projection import SolverOptions
from core.services import dataset, indicators, projection, stress
from core.utils import thread_count

logger = logging.getLogger(__name__)

PROPORTION = re.compile(r"^p(\d+)$")


def _solve_cell(ts, stats, name, tau, cfg, names, opts, warm_start):
    j0 = stats.index
    try:
        spec = StressSpec(variable=j0, tau=tau, alpha=cfg.alpha)
        target = stress.target_for_tau(stats, spec, warn_binary=False)
        weights = projection.project(projection.mean_constraint(ts, j0, target), opts, warm_start)
        values = indicators.compute(weights, ts, names, cfg.rates_mode, variable=name, tau=tau)
    except EngineError as exc:
        logger.debug(f"Skipping {name} at tau={tau}: {exc.message}")
        return SweepCell(variable=j0, variable_name=name, tau=tau, skipped=True, reason=exc.message)
    return SweepCell(
        variable=j0,
        variable_name=name,
        tau=tau,
        indicators=values,
        target=target,
        kl=weights.kl,
        xi=float(weights.xi[0]),
        iterations=weights.iterations,
        converged=weights.converged,
        residual=weights.residual,
    )


def _sweep_variable(ts, j0, cfg, names, opts):
    """One variable's tau chain; each direction warm-starts from its last solved cell."""
    name = ts.feature_names[j0]
    grid = cfg.tau_grid
    cells = [None] * len(grid)
    try:
        stats = dataset.column_stats(ts, j0)
    except EngineError as exc:
        for index, tau in enumerate(grid):
            cells[index] = SweepCell(j0, name, tau, skipped=True, reason=exc.message)
        return cells
    if not stats.is_degenerate:
        stress.warn_if_binary_valued(stats, j0)

    upward, downward = cfg.traversal_order()
    origin = None
    for chain in (upward, downward):
        warm_start = origin
        for index in chain:
            cell = _solve_cell(ts, stats, name, grid[index], cfg, names, opts, warm_start)
            cells[index] = cell
            if not cell.skipped:
                warm_start = [cell.xi]
                if grid[index] == 0.0:
                    origin = warm_start
    skipped = sum(1 for cell in cells if cell.skipped)
    if skipped:
        logger.warning(f"{name}: {skipped} of {len(grid)} grid points skipped")
    return cells


def sweep(ts, cfg=None, opts=None):
    """
    Every (variable, tau) cell of the grid. Failed cells become skip markers and
    never abort their neighbours; variables run in parallel, results are
    assembled in variable order.
    """
    cfg = cfg or SweepConfig()
    opts = opts or SolverOptions.from_settings()
    names = indicators.check_indicators(ts, cfg.indicators)
    variables = (
        [dataset.check_index(ts, j) for j in cfg.variables]
        if cfg.variables
        else list(range(ts.p))
    )
    threads = min(thread_count(), len(variables))

    started = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chains = list(pool.map(lambda j: _sweep_variable(ts, j, cfg, names, opts), variables))
    else:
        chains = [_sweep_variable(ts, j, cfg, names, opts) for j in variables]
    elapsed = time.perf_counter() - started

    result = SweepResult(
        config=replace(cfg, variables=tuple(variables), indicators=names),
        variable_names=tuple(ts.feature_names[j] for j in variables),
        cells=tuple(cell for chain in chains for cell in chain),
        metadata={
            "n": ts.n,
            "p": ts.p,
            "task": str(ts.task),
            "n_classes": ts.n_classes,
            "source": ts.source,
        },
        timing=elapsed,
    )
    logger.info(
        f"Swept {len(variables)} variable(s) over {len(cfg.tau_grid)} tau values "
        f"in {elapsed:.3f}s ({result.skipped_count} skipped)"
    )
    return result


def roc_sweep(ts, j0, cfg=None, opts=None):
    """(tau, fpr, tpr) for every admissible tau of variable j0, in grid order."""
    if ts.task != TaskKind.BINARY:
        raise TaskMismatch("roc", ts.task)
    cfg = replace(cfg or SweepConfig(), variables=(j0,), indicators=("fpr", "tpr"))
    result = sweep(ts, cfg, opts)
    return [
        RocPoint(tau=cell.tau, fpr=cell.value("fpr"), tpr=cell.value("tpr"))
        for cell in result.cells
        if not cell.skipped
    ]


def _grid_tau(config, tau):
    index = config.tau_index(tau)
    if index is None:
        raise TauNotOnGrid(tau)
    return config.tau_grid[index]


def score_table(res, indicator, tau_a, tau_b):
    """Variables ranked by I(tau_b) - I(tau_a), largest first; skipped cells are excluded."""
    if indicator not in res.indicator_names:
        raise IndicatorAbsent(indicator)
    tau_a = _grid_tau(res.config, tau_a)
    tau_b = _grid_tau(res.config, tau_b)

    rows = []
    excluded = []
    for variable, name in zip(res.variables, res.variable_names):
        cell_a = res.cell(variable, tau_a)
        cell_b = res.cell(variable, tau_b)
        missing = [cell for cell in (cell_a, cell_b) if cell.skipped]
        if missing:
            excluded.append((name, f"tau={missing[0].tau}: {missing[0].reason}"))
            continue
        score = cell_b.value(indicator) - cell_a.value(indicator)
        rows.append(ScoreRow(variable=name, score=score))
    rows.sort(key=lambda row: -row.score)
    return ScoreTable(
        indicator=indicator,
        tau_a=tau_a,
        tau_b=tau_b,
        rows=tuple(rows),
        excluded=tuple(excluded),
    )


def saturation_map(res):
    """
    Per variable and class: up = P_j(1) - P_j(0) and down = P_j(0) - P_j(-1).
    A side whose stressed cell was skipped is None.
    """
    low, zero, high = (_grid_tau(res.config, tau) for tau in (-1.0, 0.0, 1.0))
    classes = [
        int(match.group(1))
        for match in (PROPORTION.match(name) for name in res.indicator_names)
        if match
    ]
    if not classes:
        raise IndicatorAbsent("p0")

    rows = []
    for variable, name in zip(res.variables, res.variable_names):
        cells = [res.cell(variable, tau) for tau in (low, zero, high)]
        for class_id in classes:
            down_value, base, up_value = (cell.value(f"p{class_id}") for cell in cells)
            rows.append(
                SaturationRow(
                    variable=name,
                    class_id=class_id,
                    up=None if up_value is None or base is None else up_value - base,
                    down=None if down_value is None or base is None else base - down_value,
                )
            )
    return rows


def curve_slopes(res, indicator):
    """Least-squares slope of each variable's indicator curve; None below two admissible points."""
    if indicator not in res.indicator_names:
        raise IndicatorAbsent(indicator)
    slopes = {}
    for variable, name in zip(res.variables, res.variable_names):
        curve = res.curve(variable, indicator)
        if len(curve) < 2:
            slopes[name] = None
            continue
        taus, values = (np.array(column, dtype=np.float64) for column in zip(*curve))
        slopes[name] = float(np.polyfit(taus, values, 1)[0])
    return slopes
