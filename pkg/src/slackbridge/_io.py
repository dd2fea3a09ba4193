import json
import logging
import os

import pandas as pd


logger = logging.getLogger(__name__)


FLOAT_FORMAT = "%.17g"


def record_frame(record):
    """Time series of a run with the fixed column order of ``run.csv``."""

    columns = {"t": record.times}
    for k in range(record.w_bar.shape[1]):
        columns["w_bar_{0}".format(k + 1)] = record.w_bar[:, k]
    for k in range(record.theta_bar.shape[1]):
        columns["theta_bar_{0}".format(k + 1)] = record.theta_bar[:, k]
    columns["energy"] = record.energy
    columns["slack_alpha"] = record.slack_alpha
    columns["slack_beta"] = record.slack_beta
    return pd.DataFrame(columns)


def threshold_frame(results):

    return pd.DataFrame([result.as_row() for result in results])


def _write_json(path, payload):

    with open(path, "w") as stream:
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")


def write_run(record, directory, formats, extra=None):
    """Write ``run.csv`` and ``summary.json``; return the written paths."""

    os.makedirs(directory, exist_ok=True)
    written = []
    if "csv" in formats:
        path = os.path.join(directory, "run.csv")
        record_frame(record).to_csv(path, index=False, float_format=FLOAT_FORMAT)
        written.append(path)
    if "json" in formats:
        path = os.path.join(directory, "summary.json")
        summary = dict(record.summary)
        summary.update(extra or {})
        _write_json(path, summary)
        written.append(path)
    logger.info("Wrote %s", ", ".join(written))
    return written


def write_thresholds(results, directory, formats):
    """Write the threshold table as ``thresholds.csv`` and ``thresholds.json``."""

    os.makedirs(directory, exist_ok=True)
    written = []
    frame = threshold_frame(results)
    if "csv" in formats:
        path = os.path.join(directory, "thresholds.csv")
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        written.append(path)
    if "json" in formats:
        path = os.path.join(directory, "thresholds.json")
        _write_json(path, [result.as_row() for result in results])
        written.append(path)
    logger.info("Wrote %s", ", ".join(written))
    return written


def read_summary(path):

    with open(path) as stream:
        return json.load(stream)
