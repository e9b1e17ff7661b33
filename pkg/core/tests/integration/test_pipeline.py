"""
Integration tests: CSV dump -> sweep -> exported files.
"""

import json

import pandas as pd
import pytest

from core.exceptions import DatasetNotFound, MalformedDocument
from core.models import CsvSchema, RocPoint, SweepConfig
from core.services import dataset, export, projection, sweep

SCHEMA = CsvSchema(prediction_column="prediction", truth_column="truth")
GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@pytest.fixture
def golden_result(fixtures_dir):
    ts = dataset.load_csv(fixtures_dir / "frozen_dump.csv", SCHEMA)
    return sweep.sweep(ts, SweepConfig(tau_grid=GRID))


def export_all(res, out_dir):
    export.write_sweep_csv(res, out_dir / "sweep.csv")
    export.write_sweep_json(res, out_dir / "sweep.json")
    export.write_plots(res, out_dir / "plots")
    return sorted(path for path in out_dir.rglob("*") if path.is_file())


class TestSweepExport:
    """Tests for the sweep writers."""

    def test_long_csv(self, golden_result, tmp_path):
        """Should write one row per variable, tau and indicator."""
        path = export.write_sweep_csv(golden_result, tmp_path / "sweep.csv")
        frame = pd.read_csv(path, keep_default_na=False, dtype={"skipped": str, "reason": str})
        assert list(frame.columns) == ["variable", "tau", "indicator", "value", "skipped", "reason"]
        assert len(frame) == 2 * 5 * 4
        skipped = frame[frame["skipped"] == "true"]
        assert len(skipped) == 16
        assert (skipped["value"] == "").all()
        assert skipped["reason"].str.startswith("inadmissible").all()
        row = frame[
            (frame["variable"] == "a") & (frame["tau"] == 0.5) & (frame["indicator"] == "er")
        ]
        assert float(row["value"].iloc[0]) == pytest.approx(0.45, abs=1e-9)

    def test_json_document(self, golden_result, tmp_path):
        """Should write strict JSON without timing information."""
        path = export.write_sweep_json(golden_result, tmp_path / "sweep.json")
        document = json.loads(path.read_text(encoding="utf-8"))
        assert set(document) == {"config", "metadata", "variables", "summaries", "cells"}
        assert document["config"]["tau_grid"] == list(GRID)
        assert document["metadata"]["n"] == 10
        assert "timing" not in json.dumps(document)

    def test_read_back(self, golden_result, tmp_path):
        """Should read a written sweep.json back into an equivalent result."""
        path = export.write_sweep_json(golden_result, tmp_path / "sweep.json")
        restored = export.read_sweep_json(path)
        original = sweep.score_table(golden_result, "er", -0.5, 0.5)
        assert sweep.score_table(restored, "er", -0.5, 0.5) == original

    def test_read_missing(self, tmp_path):
        """Should raise DatasetNotFound for a missing document."""
        with pytest.raises(DatasetNotFound):
            export.read_sweep_json(tmp_path / "absent.json")

    @pytest.mark.parametrize("text", ["{not json", '{"config": {}}'])
    def test_read_malformed(self, tmp_path, text):
        """Should raise MalformedDocument for invalid JSON or a foreign document."""
        path = tmp_path / "bad.json"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(MalformedDocument):
            export.read_sweep_json(path)

    def test_plots(self, golden_result, tmp_path):
        """Should write one SVG per indicator plus the ROC plot."""
        written = export.write_plots(golden_result, tmp_path)
        assert sorted(path.name for path in written) == [
            "er.svg",
            "fpr.svg",
            "p1.svg",
            "roc.svg",
            "tpr.svg",
        ]
        assert written[0].read_text(encoding="utf-8").lstrip().startswith("<?xml")

    def test_byte_identical_reruns(self, fixtures_dir, tmp_path):
        """Should produce byte-identical files for identical runs."""
        runs = []
        for name in ("first", "second"):
            ts = dataset.load_csv(fixtures_dir / "frozen_dump.csv", SCHEMA)
            out_dir = tmp_path / name
            out_dir.mkdir()
            runs.append(export_all(sweep.sweep(ts, SweepConfig(tau_grid=GRID)), out_dir))
        first, second = runs
        assert [path.relative_to(tmp_path / "first") for path in first] == [
            path.relative_to(tmp_path / "second") for path in second
        ]
        for left, right in zip(first, second):
            assert left.read_bytes() == right.read_bytes()


class TestTableExports:
    """Tests for score, saturation, ROC and weight writers."""

    def test_scores(self, golden_result, tmp_path):
        """Should write the ranking as CSV, JSON and the two-block text layout."""
        table = sweep.score_table(golden_result, "er", -0.5, 0.5)
        export.write_scores(table, tmp_path, ("csv", "json"))
        frame = pd.read_csv(tmp_path / "scores.csv")
        assert frame["variable"].tolist() == ["b", "a"]
        assert frame["rank"].tolist() == [1, 2]
        text = (tmp_path / "scores.txt").read_text(encoding="utf-8")
        assert text.startswith("er: I(tau=0.5) - I(tau=-0.5)\n")
        assert "increase:\n  b (0.20)\n  a (0.08)\n" in text
        assert "decrease:\n  (none)" in text

    def test_scores_exclusions(self, golden_result, tmp_path):
        """Should list excluded variables in every format."""
        table = sweep.score_table(golden_result, "er", 0.0, 1.0)
        export.write_scores(table, tmp_path, ("json",))
        document = json.loads((tmp_path / "scores.json").read_text(encoding="utf-8"))
        assert [item["variable"] for item in document["excluded"]] == ["a", "b"]
        assert "excluded: a (tau=1.0: inadmissible" in export.format_scores(table)

    def test_saturation(self, golden_result, tmp_path):
        """Should write null shifts for skipped sides."""
        export.write_saturation(sweep.saturation_map(golden_result), tmp_path)
        document = json.loads((tmp_path / "saturation.json").read_text(encoding="utf-8"))
        assert document[0] == {"variable": "a", "class_id": 1, "up": None, "down": None}

    def test_roc(self, golden_result, tmp_path):
        """Should write the ROC points of a variable."""
        points = [
            RocPoint(tau=cell.tau, fpr=cell.value("fpr"), tpr=cell.value("tpr"))
            for cell in golden_result.cells_for(0)
            if not cell.skipped
        ]
        export.write_roc(points, tmp_path, "a")
        frame = pd.read_csv(tmp_path / "roc.csv")
        assert frame["tau"].tolist() == [-0.5, 0.0, 0.5]
        document = json.loads((tmp_path / "roc.json").read_text(encoding="utf-8"))
        assert document["variable"] == "a"
        assert len(document["points"]) == 3

    def test_weights(self, fixtures_dir, tmp_path):
        """Should write n lambdas with mean one and echo the constraint context."""
        ts = dataset.load_csv(fixtures_dir / "frozen_dump.csv", SCHEMA)
        weights = projection.stress_weights(ts, 0, 0.5)
        export.write_weights(weights, tmp_path, context={"constraint": "mean", "tau": 0.5})
        frame = pd.read_csv(tmp_path / "weights.csv")
        assert frame["index"].tolist() == list(range(10))
        assert frame["lambda"].mean() == pytest.approx(1.0, abs=1e-12)
        document = json.loads((tmp_path / "weights.json").read_text(encoding="utf-8"))
        assert document["constraint"] == "mean"
        assert document["lambdas"][0] == pytest.approx(1.75, abs=1e-9)
