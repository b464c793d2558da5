"""CSV ingestion and result serialization.

Input files are headered CSV. Numbers are written with ``repr`` so a
read-back reproduces every float bit for bit. Result files come in
pairs: a records CSV plus a JSON summary next to it.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import fields as dataclass_fields
from pathlib import Path

import numpy as np

from .bench import MetricsRecord, TimingRecord
from .errors import ConfigError, DataFormatError
from .linalg import DataMatrix

RECORD_COLUMNS = tuple(f.name for f in dataclass_fields(MetricsRecord))
TIMING_COLUMNS = tuple(f.name for f in dataclass_fields(TimingRecord))


def _read_rows(path) -> tuple[list[str], list[list[str]]]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataFormatError(f"{path} is empty")
    return rows[0], rows[1:]


def read_csv(path, covariates: list[str] | None = None,
             response: str | None = None, log_response: bool = False) -> DataMatrix:
    """Load a headered CSV into a DataMatrix.

    ``covariates`` names the covariate columns (default: every column
    except the response). ``response`` names the response column, if
    any. ``log_response`` applies a natural log to the response at
    ingestion time.

    Malformed or non-finite cells raise :class:`DataFormatError` naming
    1-based (row, column) file coordinates, data rows counted from 1
    below the header.
    """
    header, rows = _read_rows(path)
    if not rows:
        raise DataFormatError(f"{path} has a header but no data rows")
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise DataFormatError(
            f"duplicate header column(s) {dupes} make name lookup ambiguous"
        )
    col_of = {name: i for i, name in enumerate(header)}

    if response is not None and response not in col_of:
        raise ConfigError(
            f"response column {response!r} not in header {header}"
        )
    if covariates is None:
        cov_names = [h for h in header if h != response]
    else:
        missing = [c for c in covariates if c not in col_of]
        if missing:
            raise ConfigError(
                f"covariate column(s) {missing} not in header {header}"
            )
        cov_names = list(covariates)
    if not cov_names:
        raise ConfigError("no covariate columns left after excluding the response")

    names = cov_names + ([response] if response is not None else [])
    width = len(header)
    parsed = np.empty((len(rows), len(names)))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(
                f"row {i + 1} has {len(row)} fields, header has {width}",
                row=i + 1,
            )
        for j, name in enumerate(names):
            c = col_of[name]
            cell = row[c]
            try:
                val = float(cell)
            except ValueError:
                raise DataFormatError(
                    f"malformed numeric cell {cell!r} at row {i + 1}, "
                    f"col {c + 1}",
                    row=i + 1, col=c + 1,
                ) from None
            if not math.isfinite(val):
                raise DataFormatError(
                    f"non-finite cell {cell!r} at row {i + 1}, col {c + 1}",
                    row=i + 1, col=c + 1,
                )
            parsed[i, j] = val

    if response is not None:
        y = parsed[:, -1].copy()
        X = parsed[:, :-1]
        if log_response:
            bad = np.flatnonzero(y <= 0.0)
            if bad.size:
                i = int(bad[0])
                raise DataFormatError(
                    f"log transform needs a positive response, got {y[i]!r} "
                    f"at row {i + 1}",
                    row=i + 1, col=col_of[response] + 1,
                )
            y = np.log(y)
        return DataMatrix(X, y)
    if log_response:
        raise ConfigError("log_response requires a response column")
    return DataMatrix(parsed)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        # plain-float repr round-trips exactly and never loses precision
        return repr(float(value))
    return str(value)


def _json_paths(path) -> tuple[Path, Path]:
    base = Path(path)
    if base.suffix == ".csv":
        return base, base.with_suffix(".json")
    return base.with_suffix(".csv"), base.with_suffix(".json")


def write_results(records, summary: dict, path) -> tuple[Path, Path]:
    """Write a records CSV and its JSON summary; returns both paths.

    ``path`` may point at the CSV or be extension-free; the JSON lands
    next to it with the same stem. Column order is fixed, floats are
    written at round-trip precision, and an empty record list still
    produces the header line.
    """
    csv_path, json_path = _json_paths(path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, c)) for c in RECORD_COLUMNS])
    with open(json_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def _parse_optional_float(text: str) -> float | None:
    return None if text == "" else float(text)


def read_records(path) -> list[MetricsRecord]:
    """Read back a records CSV written by :func:`write_results`."""
    header, rows = _read_rows(path)
    if tuple(header) != RECORD_COLUMNS:
        raise DataFormatError(
            f"unexpected records header {header}, wanted {list(RECORD_COLUMNS)}"
        )
    out = []
    for row in rows:
        vals = dict(zip(header, row))
        out.append(MetricsRecord(
            repetition=int(vals["repetition"]),
            selector=vals["selector"],
            k=int(vals["k"]),
            k_star=int(vals["k_star"]),
            mse_intercept=float(vals["mse_intercept"]),
            mse_slopes=float(vals["mse_slopes"]),
            mse_main=_parse_optional_float(vals["mse_main"]),
            mse_interaction=_parse_optional_float(vals["mse_interaction"]),
            logdet=float(vals["logdet"]),
            elapsed_select=float(vals["elapsed_select"]),
            elapsed_fit=float(vals["elapsed_fit"]),
            failed=vals["failed"] == "true",
            error=vals["error"],
        ))
    return out


def write_timing(records, summary: dict, path) -> tuple[Path, Path]:
    """Write timing records the same way :func:`write_results` does."""
    csv_path, json_path = _json_paths(path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TIMING_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, c)) for c in TIMING_COLUMNS])
    with open(json_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def write_selection(result, summary: dict, path) -> tuple[Path, Path]:
    """Write selected row indices (one per line) plus the JSON summary."""
    csv_path, json_path = _json_paths(path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index"])
        for i in result.indices:
            writer.writerow([int(i)])
    doc = dict(summary)
    doc["k_star"] = int(result.k_star)
    doc["elapsed"] = float(result.elapsed)
    doc["condition_trace"] = [float(v) for v in result.condition_trace]
    with open(json_path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def write_dataset(data: DataMatrix, path) -> Path:
    """Dump covariates (x1..xp) and optional response (y) to CSV."""
    out = Path(path)
    p = data.p
    header = [f"x{j + 1}" for j in range(p)]
    if data.response is not None:
        header.append("y")
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(data.n):
            row = [repr(float(v)) for v in data.values[i]]
            if data.response is not None:
                row.append(repr(float(data.response[i])))
            writer.writerow(row)
    return out
