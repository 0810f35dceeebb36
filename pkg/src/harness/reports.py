"""Report emission: summary table, GOSPA curves, convergence trace, scenario lock."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from src.harness.experiment import GospaParams, MethodOutcome, MethodResult, RunReport
from src.harness.scenario import SCHEMA_VERSION, Scenario
from src.shared.errors import ReportError

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.json"
CURVES_FILE = "gospa_curves.csv"
CONVERGENCE_FILE = "convergence.csv"
LOCK_FILE = "scenario.lock.json"
ESTIMATES_SUFFIX = "estimates.jsonl"


def _write_text(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise ReportError(f"failed to write report ({e})", path) from e
    logger.info(f"✓ Wrote {path.name}")
    return path


def _dumps_pretty(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _method_row(result: MethodResult) -> dict[str, Any]:
    summary = result.summary
    row: dict[str, Any] = {
        "label": result.label,
        "type": result.type,
        "failures": result.failures,
    }
    if summary is None:
        row.update(
            mgospa=None, localisation=None, missed=None, false=None, ci=None, runs=0
        )
        return row
    row.update(
        mgospa=summary.mgospa.to_dict(),
        localisation=summary.localisation.to_dict(),
        missed=summary.missed.to_dict(),
        false=summary.false_.to_dict(),
        ci=summary.ci,
        runs=summary.runs,
        max_sensor_std=max(summary.sensor_spread),
    )
    return row


def summary_data(report: RunReport) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "provenance": report.provenance,
        "methods": [_method_row(m) for m in report.methods],
        "failures": report.failures,
    }


def lock_data(scenario: Scenario) -> dict[str, Any]:
    """Resolved scenario plus the effective seed and its config hash."""
    return {
        "config_hash": scenario.config_hash(),
        "seed": scenario.seed,
        "scenario": scenario.model_dump(mode="json"),
    }


def write_lock(scenario: Scenario, output_dir: Path) -> Path:
    return _write_text(output_dir / LOCK_FILE, _dumps_pretty(lock_data(scenario)))


def emit_reports(report: RunReport, output_dir: Path) -> list[Path]:
    """
    Write the four report files. Same report in, same bytes out.

    Args:
        report: Aggregated experiment
        output_dir: Target directory (created if missing)

    Returns:
        Paths written

    Raises:
        ReportError: If a file cannot be written
    """
    curve_rows = [
        [n + 1, m.label, point.mean, point.std]
        for m in report.methods
        if m.summary is not None
        for n, point in enumerate(m.summary.curve)
    ]
    convergence_rows = [
        [row.method, row.iteration, row.sensor, row.gospa] for row in report.convergence
    ]
    return [
        _write_text(output_dir / SUMMARY_FILE, _dumps_pretty(summary_data(report))),
        _write_text(
            output_dir / CURVES_FILE,
            _csv_text(["step", "method", "mean", "std"], curve_rows),
        ),
        _write_text(
            output_dir / CONVERGENCE_FILE,
            _csv_text(["method", "iteration", "sensor", "gospa"], convergence_rows),
        ),
        write_lock(report.scenario, output_dir),
    ]


def write_estimates(outcome: MethodOutcome, output_dir: Path) -> Path:
    """One JSON-lines record per step: every estimator's (K, 2) positions."""
    lines = [
        json.dumps(
            {
                "time_step": n + 1,
                "estimates": [est.tolist() for est in step],
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        for n, step in enumerate(outcome.estimates)
    ]
    path = output_dir / f"{outcome.label}.{ESTIMATES_SUFFIX}"
    return _write_text(path, "".join(line + "\n" for line in lines))


def _read_jsonl(path: Path) -> list[dict[str, Any]]:
    try:
        with open(path) as f:
            return [json.loads(line) for line in f if line.strip()]
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(f"failed to read records ({e})", path) from e


def score_estimate_file(
    truth_path: Path, estimates_path: Path, params: GospaParams
) -> dict[str, Any]:
    """
    Score an estimates file against a bundle's truth file, step by step.

    The truth file holds full states per step (positions are components 0 and
    2); the estimates file holds one (K, 2) list per estimator per step.

    Raises:
        ReportError: If a file is unreadable or an estimate step has no truth
    """
    truth = {
        r["time_step"]: np.asarray(r["states"], dtype=float)[:, [0, 2]]
        for r in _read_jsonl(truth_path)
    }
    steps = []
    for record in sorted(_read_jsonl(estimates_path), key=lambda r: r["time_step"]):
        time_step = record["time_step"]
        if time_step not in truth:
            raise ReportError(f"no truth for time step {time_step}", truth_path)
        scores = [params.score(est, truth[time_step]) for est in record["estimates"]]
        steps.append(
            {
                "time_step": time_step,
                "gospa": [s.total for s in scores],
                "localisation": [s.localisation for s in scores],
                "missed": [s.missed for s in scores],
                "false": [s.false_ for s in scores],
            }
        )
    totals = [g for step in steps for g in step["gospa"]]
    return {
        "p": params.p,
        "alpha": params.alpha,
        "c": params.c,
        "mean": float(np.mean(totals)) if totals else None,
        "steps": steps,
    }
