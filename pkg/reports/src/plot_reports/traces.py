"""Reading solver trace CSVs.

The contract is the trace schema only: a header row naming at least
``iter``, ``dual_bound`` and ``best_primal``, then one row per outer
iteration with ``iter`` strictly increasing.  Extra columns are carried
along untouched; nothing here knows anything about the solver that wrote
the file.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np

REQUIRED = ("iter", "dual_bound", "best_primal")


class ReportError(ValueError):
    pass


@dataclass
class TraceFrame:
    """One parsed trace: column arrays keyed by header name."""

    name: str
    columns: dict = field(default_factory=dict)

    def __post_init__(self):
        for col in REQUIRED:
            if col not in self.columns:
                raise ReportError(f"{self.name}: missing required column {col!r}")
        it = self.columns["iter"]
        if len(it) == 0:
            raise ReportError(f"{self.name}: trace has no rows")
        if np.any(np.diff(it) <= 0):
            raise ReportError(f"{self.name}: iter column is not strictly increasing")

    def __len__(self):
        return len(self.columns["iter"])

    @property
    def final_gap(self):
        return float(self.columns["dual_bound"][-1]
                     - self.columns["best_primal"][-1])


def read_trace(path):
    """Parse one CSV trace into a TraceFrame named after the file stem."""
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        fh = open(path, newline="")
    except FileNotFoundError:
        raise ReportError(f"{path}: no such file") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ReportError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ReportError(f"{path}:{lineno}: expected {len(header)} "
                                  f"fields, got {len(row)}")
            rows.append(row)
    columns = {}
    for j, col in enumerate(header):
        raw = [r[j] for r in rows]
        try:
            columns[col] = np.array([float(v) for v in raw])
        except ValueError:
            columns[col] = np.array(raw)  # non-numeric columns kept as text
    if "iter" in columns and rows:
        columns["iter"] = columns["iter"].astype(np.int64)
    return TraceFrame(name=name, columns=columns)


def parse_baseline(spec):
    """Split a 'label=value' baseline argument into (label, float)."""
    label, sep, value = spec.partition("=")
    if not sep or not label.strip():
        raise ReportError(f"baseline {spec!r} is not of the form label=value")
    try:
        return label.strip(), float(value)
    except ValueError:
        raise ReportError(f"baseline {spec!r}: {value!r} is not a number") from None
