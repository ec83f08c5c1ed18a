"""Shared per-iteration trace schema with lossless CSV round-tripping."""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields


@dataclass
class TraceRow:
    """One accepted solver iteration.

    `residual_normalized` is the stationarity residual divided by sqrt(2m),
    the quantity every solver in this package stops on; `wall_time_ns` is a
    monotonic clock stamp taken when the step was accepted.
    """

    outer_iter: int
    tau: float
    inner_iter: int
    objective_h_tau: float
    objective_f: float
    residual_normalized: float
    support_size: int
    step_alpha: float
    direction_kind: str
    wall_time_ns: int


TRACE_COLUMNS = [f.name for f in fields(TraceRow)]
_FLOAT_FIELDS = {"tau", "objective_h_tau", "objective_f", "residual_normalized", "step_alpha"}
_INT_FIELDS = {"outer_iter", "inner_iter", "support_size", "wall_time_ns"}


def _format_cell(name: str, value) -> str:
    if name in _FLOAT_FIELDS:
        return format(float(value), ".17g")
    return str(value)


def write_trace_csv(rows: list[TraceRow], path) -> None:
    """Write trace rows as CSV with a header, floats at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for row in rows:
            writer.writerow(_format_cell(name, getattr(row, name)) for name in TRACE_COLUMNS)


def read_trace_csv(path) -> list[TraceRow]:
    """Read trace rows back; exact inverse of :func:`write_trace_csv`."""
    rows: list[TraceRow] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace columns {reader.fieldnames} in {path}")
        for rec in reader:
            kwargs = {}
            for name in TRACE_COLUMNS:
                if name in _FLOAT_FIELDS:
                    kwargs[name] = float(rec[name])
                elif name in _INT_FIELDS:
                    kwargs[name] = int(rec[name])
                else:
                    kwargs[name] = rec[name]
            rows.append(TraceRow(**kwargs))
    return rows
