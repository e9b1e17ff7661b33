"""
Writers and readers for run outputs: long-format CSV, JSON documents
rendered with the REST framework's strict JSON renderer, and SVG plots.

Everything written here is a pure function of its input, so identical runs
produce byte-identical files.
"""

import io
import logging
from pathlib import Path

import matplotlib
import pandas as pd
from matplotlib.figure import Figure
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from core.exceptions import DatasetNotFound, MalformedDocument
from core.serializers import (
    RocPointSerializer,
    SaturationRowSerializer,
    ScoreTableSerializer,
    SweepResultSerializer,
    WeightVectorSerializer,
)

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["variable", "tau", "indicator", "value", "skipped", "reason"]
SVG_HASH_SALT = "entropic-stress"


def render_json(data):
    return JSONRenderer().render(data, renderer_context={"indent": 2}) + b"\n"


def write_json(data, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(render_json(data))
    return path


def _write_frame(frame, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def _flag(value):
    return "true" if value else "false"


def write_sweep_csv(res, path):
    """One row per (variable, tau, indicator); skipped cells carry an empty value and the reason."""
    rows = []
    for cell in res.cells:
        for indicator in res.indicator_names:
            rows.append(
                {
                    "variable": cell.variable_name,
                    "tau": cell.tau,
                    "indicator": indicator,
                    "value": cell.value(indicator),
                    "skipped": _flag(cell.skipped),
                    "reason": cell.reason,
                }
            )
    return _write_frame(pd.DataFrame(rows, columns=SWEEP_COLUMNS), path)


def write_sweep_json(res, path):
    return write_json(SweepResultSerializer(res).data, path)


def read_sweep_json(path):
    """Rebuild a SweepResult from a sweep.json document."""
    path = Path(path)
    if not path.is_file():
        raise DatasetNotFound(path)
    try:
        document = JSONParser().parse(io.BytesIO(path.read_bytes()))
    except ParseError as exc:
        raise MalformedDocument(f"{path.name} is not a valid JSON document: {exc}") from exc
    serializer = SweepResultSerializer(data=document)
    if not serializer.is_valid():
        errors = dict(serializer.errors)
        raise MalformedDocument(f"{path.name} is not a sweep document: {errors}")
    return serializer.save()


def write_weights(weights, out_dir, formats=("csv", "json"), context=None):
    """weights.csv (index, lambda) and weights.json; context is echoed into the JSON."""
    out_dir = Path(out_dir)
    written = []
    if "csv" in formats:
        frame = pd.DataFrame({"index": range(weights.n), "lambda": weights.lambdas})
        written.append(_write_frame(frame, out_dir / "weights.csv"))
    if "json" in formats:
        document = dict(context or {})
        document.update(WeightVectorSerializer(weights).data)
        written.append(write_json(document, out_dir / "weights.json"))
    return written


def write_roc(points, out_dir, variable, formats=("csv", "json")):
    out_dir = Path(out_dir)
    written = []
    if "csv" in formats:
        frame = pd.DataFrame(
            [(point.tau, point.fpr, point.tpr) for point in points], columns=["tau", "fpr", "tpr"]
        )
        written.append(_write_frame(frame, out_dir / "roc.csv"))
    if "json" in formats:
        document = {"variable": variable, "points": RocPointSerializer(points, many=True).data}
        written.append(write_json(document, out_dir / "roc.json"))
    return written


def format_scores(table):
    """Two-block ranking: variables the stress pushes up, then those it pushes down."""
    increase = [row for row in table.rows if row.score > 0]
    decrease = sorted((row for row in table.rows if row.score < 0), key=lambda row: row.score)
    flat = [row for row in table.rows if row.score == 0]
    lines = [f"{table.indicator}: I(tau={table.tau_b}) - I(tau={table.tau_a})", ""]
    for title, rows in (("increase", increase), ("decrease", decrease)):
        lines.append(f"{title}:")
        lines.extend(f"  {row.variable} ({row.score:.2f})" for row in rows)
        if not rows:
            lines.append("  (none)")
        lines.append("")
    if flat:
        lines.append("unchanged: " + ", ".join(row.variable for row in flat))
    for name, reason in table.excluded:
        lines.append(f"excluded: {name} ({reason})")
    return "\n".join(lines).rstrip("\n") + "\n"


def write_scores(table, out_dir, formats=("csv", "json")):
    out_dir = Path(out_dir)
    written = []
    if "csv" in formats:
        frame = pd.DataFrame(
            [(rank, row.variable, row.score) for rank, row in enumerate(table.rows, start=1)],
            columns=["rank", "variable", "score"],
        )
        written.append(_write_frame(frame, out_dir / "scores.csv"))
    if "json" in formats:
        written.append(write_json(ScoreTableSerializer(table).data, out_dir / "scores.json"))
    text = out_dir / "scores.txt"
    text.parent.mkdir(parents=True, exist_ok=True)
    text.write_text(format_scores(table), encoding="utf-8")
    written.append(text)
    return written


def write_saturation(rows, out_dir, formats=("csv", "json")):
    out_dir = Path(out_dir)
    written = []
    if "csv" in formats:
        frame = pd.DataFrame(
            [(row.variable, row.class_id, row.up, row.down) for row in rows],
            columns=["variable", "class", "up", "down"],
        )
        written.append(_write_frame(frame, out_dir / "saturation.csv"))
    if "json" in formats:
        data = SaturationRowSerializer(rows, many=True).data
        written.append(write_json(data, out_dir / "saturation.json"))
    return written


def _save_svg(figure, path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        figure.savefig(path, format="svg", metadata={"Date": None})
    return path


def write_plots(res, plots_dir):
    """One SVG per indicator with one line per variable, plus roc.svg when fpr and tpr exist."""
    plots_dir = Path(plots_dir)
    written = []
    for indicator in res.indicator_names:
        figure = Figure(figsize=(6.4, 4.8))
        axes = figure.subplots()
        for variable, name in zip(res.variables, res.variable_names):
            curve = res.curve(variable, indicator)
            if curve:
                taus, values = zip(*curve)
                axes.plot(taus, values, marker=".", label=name)
        axes.set_xlabel("tau")
        axes.set_ylabel(indicator)
        axes.set_xlim(-1.05, 1.05)
        if axes.lines:
            axes.legend(loc="best", fontsize="small")
        written.append(_save_svg(figure, plots_dir / f"{indicator}.svg"))

    if {"fpr", "tpr"} <= set(res.indicator_names):
        curves = {}
        for variable, name in zip(res.variables, res.variable_names):
            curves[name] = (
                [value for _, value in res.curve(variable, "fpr")],
                [value for _, value in res.curve(variable, "tpr")],
            )
        written.append(write_roc_plot(curves, plots_dir / "roc.svg"))
    logger.info(f"Wrote {len(written)} plot(s) to {plots_dir}")
    return written


def write_roc_plot(curves, path):
    """ROC plot of {name: (fpr values, tpr values)} against the chance diagonal."""
    figure = Figure(figsize=(4.8, 4.8))
    axes = figure.subplots()
    axes.plot([0, 1], [0, 1], color="grey", linestyle=":", linewidth=0.8)
    for name, (fpr, tpr) in curves.items():
        if fpr:
            axes.plot(fpr, tpr, marker=".", label=name)
    axes.set_xlabel("false positive rate")
    axes.set_ylabel("true positive rate")
    if len(axes.lines) > 1:
        axes.legend(loc="lower right", fontsize="small")
    return _save_svg(figure, Path(path))
