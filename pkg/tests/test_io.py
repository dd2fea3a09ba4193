import math

import numpy as np
import pandas as pd

from slackbridge import RunRecord, ThresholdResult
from slackbridge._io import (
    read_summary,
    record_frame,
    threshold_frame,
    write_run,
    write_thresholds,
)


def make_record():

    return RunRecord(
        times=np.array([0.0, 0.1, 0.2]),
        w_bar=np.array([[1.0, 0.0], [0.5, 0.1], [0.1, 1 / 3]]),
        theta_bar=np.array([[0.001], [0.002], [-0.003]]),
        energy=np.array([1.5e8, 1.5e8 + 1.0, 1.5e8 - 1.0]),
        slack_alpha=np.array([0.0, 0.25, 0.5]),
        slack_beta=np.array([0.0, 0.125, 0.0]),
    )


def test_record_columns():
    """Columns follow the documented order."""

    frame = record_frame(make_record())

    assert list(frame.columns) == [
        "t",
        "w_bar_1",
        "w_bar_2",
        "theta_bar_1",
        "energy",
        "slack_alpha",
        "slack_beta",
    ]


def test_run_files(tmp_path):
    """The time series keeps every digit and the summary parses back."""

    record = make_record()
    written = write_run(record, str(tmp_path), ("csv", "json"), {"mode": 9})

    assert written == [str(tmp_path / "run.csv"), str(tmp_path / "summary.json")]

    frame = pd.read_csv(tmp_path / "run.csv", float_precision="round_trip")

    assert frame["w_bar_2"].tolist() == [0.0, 0.1, 1 / 3]
    assert frame["energy"].tolist() == record.energy.tolist()

    summary = read_summary(str(tmp_path / "summary.json"))
    expected = dict(record.summary, mode=9)

    assert summary == expected


def test_formats_select_files(tmp_path):
    """Only the requested formats are written."""

    written = write_run(make_record(), str(tmp_path / "out"), ("json",))

    assert written == [str(tmp_path / "out" / "summary.json")]
    assert not (tmp_path / "out" / "run.csv").exists()


def test_threshold_files(tmp_path):
    """One row per result, in both formats."""

    results = [
        ThresholdResult(
            mode=9,
            variant="convexified",
            threshold=2.31,
            bracket=(2.3, 2.31),
            energy_at_threshold=1.54e8,
            mean_slackening=0.2,
            dominant_torsional_mode=2,
            probes=12,
        ),
        ThresholdResult(mode=10, variant="convexified", error="failed"),
    ]

    write_thresholds(results, str(tmp_path), ("csv", "json"))

    frame = pd.read_csv(tmp_path / "thresholds.csv", float_precision="round_trip")
    rows = read_summary(str(tmp_path / "thresholds.json"))

    assert frame["mode"].tolist() == [9, 10]
    assert frame["threshold"][0] == 2.31
    assert math.isnan(frame["threshold"][1])
    assert frame["error"].fillna("").tolist() == ["", "failed"]
    assert rows[0]["dominant_torsional_mode"] == 2
    assert rows[1]["error"] == "failed"
    assert list(threshold_frame(results).columns) == list(results[0].as_row())
