"""File formats: the dataset CSV, calibration snapshots, and report files.

Dataset CSV schema (header mandatory, column order fixed):

    depolarizing,gate,reset,readout,distance,rounds,logical_error_rate

Rates and error rates are written in scientific notation with 17 digits after
the point, which round-trips float64 exactly; distance and rounds are plain
integers. Calibration snapshots are flat JSON objects with keys ``device``,
``timestamp``, ``depolarizing``, ``gate``, ``reset``, ``readout``.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (
    CodeParams,
    DatasetRecord,
    NoiseProfile,
    ValidationError,
)
from .evaluate import ComparisonRow, EvalReport

DATASET_HEADER = ("depolarizing", "gate", "reset", "readout",
                  "distance", "rounds", "logical_error_rate")

CALIBRATION_KEYS = ("device", "timestamp", "depolarizing", "gate", "reset", "readout")


class DataFormatError(ValidationError):
    """A file does not match its documented schema."""


def _fmt(value: float) -> str:
    return format(float(value), ".17e")


def write_dataset_csv(records: Iterable[DatasetRecord], path: str | os.PathLike) -> int:
    """Write records; returns the row count. Output is byte-deterministic."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(DATASET_HEADER) + "\n")
        for record in records:
            noise = record.noise
            handle.write(",".join([
                _fmt(noise.depolarizing), _fmt(noise.gate), _fmt(noise.reset),
                _fmt(noise.readout), str(record.params.distance),
                str(record.params.rounds), _fmt(record.logical_error_rate),
            ]) + "\n")
            count += 1
    return count


def _parse_cell(row_number: int, column: str, text: str, kind: type):
    try:
        if kind is int:
            return int(text)
        return float(text)
    except ValueError as exc:
        raise DataFormatError(
            f"row {row_number}, column '{column}': cannot parse {text!r}") from exc


def read_dataset_csv(path: str | os.PathLike) -> list[DatasetRecord]:
    """Parse and validate a dataset CSV; errors carry the row and column."""
    records = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError("empty file: missing header") from None
        if tuple(header) != DATASET_HEADER:
            raise DataFormatError(
                f"bad header {header!r}; expected {','.join(DATASET_HEADER)}")
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(DATASET_HEADER):
                raise DataFormatError(
                    f"row {row_number}: expected {len(DATASET_HEADER)} fields, got {len(row)}")
            values = {}
            for column, text in zip(DATASET_HEADER, row):
                kind = int if column in ("distance", "rounds") else float
                values[column] = _parse_cell(row_number, column, text, kind)
            try:
                records.append(DatasetRecord(
                    noise=NoiseProfile(
                        depolarizing=values["depolarizing"], gate=values["gate"],
                        reset=values["reset"], readout=values["readout"]),
                    params=CodeParams(distance=values["distance"], rounds=values["rounds"]),
                    logical_error_rate=values["logical_error_rate"],
                ))
            except ValidationError as exc:
                raise DataFormatError(f"row {row_number}: {exc}") from exc
    return records


@dataclass(frozen=True)
class CalibrationSnapshot:
    device: str
    timestamp: str
    profile: NoiseProfile


def read_calibration(path: str | os.PathLike) -> CalibrationSnapshot:
    """Load a calibration snapshot; the keys must match the schema exactly."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"invalid calibration JSON {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DataFormatError("calibration snapshot must be a JSON object")
    missing = [key for key in CALIBRATION_KEYS if key not in data]
    unknown = [key for key in data if key not in CALIBRATION_KEYS]
    if missing or unknown:
        raise DataFormatError(
            f"calibration snapshot keys mismatch: missing {missing}, unknown {unknown}")
    for key in ("depolarizing", "gate", "reset", "readout"):
        if not isinstance(data[key], (int, float)) or isinstance(data[key], bool):
            raise DataFormatError(f"calibration key '{key}' must be a number")
    return CalibrationSnapshot(
        device=str(data["device"]),
        timestamp=str(data["timestamp"]),
        profile=NoiseProfile(
            depolarizing=float(data["depolarizing"]), gate=float(data["gate"]),
            reset=float(data["reset"]), readout=float(data["readout"])),
    )


# -- report files -----------------------------------------------------------


def _round_trip_float(value: Optional[float]):
    return None if value is None else float(value)


def report_scalars(report: EvalReport) -> dict:
    """The deterministic scalar section of report.json (timing excluded)."""
    return {
        "n_cases": report.n_cases,
        "pearson": {
            "raw_distance": _round_trip_float(report.pearson_raw_distance),
            "rounded_distance": _round_trip_float(report.pearson_rounded_distance),
            "raw_rounds": _round_trip_float(report.pearson_raw_rounds),
            "rounded_rounds": _round_trip_float(report.pearson_rounded_rounds),
        },
        "achievement_fraction": report.achievement_fraction,
        "deltas": {
            "count": len(report.dler_tler_deltas),
            "mean": (sum(report.dler_tler_deltas) / len(report.dler_tler_deltas)
                     if report.dler_tler_deltas else None),
            "min": min(report.dler_tler_deltas) if report.dler_tler_deltas else None,
            "max": max(report.dler_tler_deltas) if report.dler_tler_deltas else None,
            "positive_count": sum(1 for d in report.dler_tler_deltas if d > 0),
            "p95_positive_over_target": _round_trip_float(
                report.positive_delta_over_target_p95),
        },
        "dler_source": "synthetic-oracle",
    }


def write_report_json(report: EvalReport, path: str | os.PathLike) -> None:
    payload = report_scalars(report)
    payload["timing_ms"] = {  # wall-clock; not covered by determinism checks
        "mean": report.latency_mean_ms,
        "stddev": report.latency_std_ms,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def write_deltas_csv(report: EvalReport, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("target_ler,dler,delta,pred_distance,pred_rounds,"
                     "opt_distance,opt_rounds\n")
        rows = zip(report.targets, report.dler, report.dler_tler_deltas,
                   report.predicted_distance, report.predicted_rounds,
                   report.optimal_distance, report.optimal_rounds)
        for target, dler, delta, pd, pr, od, orr in rows:
            handle.write(f"{_fmt(target)},{_fmt(dler)},{_fmt(delta)},"
                         f"{pd},{pr},{od},{orr}\n")


def write_heatmap_csv(report: EvalReport, path: str | os.PathLike) -> None:
    """Predicted-vs-optimal distance bins: one row per (pred, opt) pair."""
    counts: dict[tuple[int, int], int] = {}
    for pred, opt in zip(report.predicted_distance, report.optimal_distance):
        counts[(pred, opt)] = counts.get((pred, opt), 0) + 1
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("pred_distance,opt_distance,count\n")
        for (pred, opt) in sorted(counts):
            handle.write(f"{pred},{opt},{counts[(pred, opt)]}\n")


def write_comparison_csv(rows: list[ComparisonRow], path: str | os.PathLike) -> None:
    def cell(value: Optional[float]) -> str:
        return "" if value is None else _fmt(value)

    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("model,pearson_raw_distance,pearson_raw_rounds,"
                     "pearson_rounded_distance,pearson_rounded_rounds\n")
        for row in rows:
            handle.write(f"{row.model},{cell(row.pearson_raw_distance)},"
                         f"{cell(row.pearson_raw_rounds)},"
                         f"{cell(row.pearson_rounded_distance)},"
                         f"{cell(row.pearson_rounded_rounds)}\n")
