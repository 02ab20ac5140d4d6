"""Instance files (JSON) and solver trace files (CSV).

Floats are serialized with Python's shortest round-trip repr, so parsing a
written file reproduces every value bit-exactly.  Unknown top-level keys in
instance files are ignored (forward compatibility for metadata).
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .core import DomainError
from .extensions import DifferenceInstance
from .instances import (CoverageInstance, CutInstance, EntropyInstance,
                        ModularInstance)
from .solver import TRACE_COLUMNS, TraceRow


class ParseError(ValueError):
    """Malformed instance or trace input (file, line, or field named)."""


def instance_to_obj(inst):
    if isinstance(inst, CutInstance):
        return {"type": "cut", "n": inst.n,
                "edges": [[i, j, w] for i, j, w in inst.edges],
                "meta": dict(inst.meta)}
    if isinstance(inst, CoverageInstance):
        return {"type": "coverage", "n": inst.n, "universe": inst.universe,
                "weights": [float(w) for w in inst.weights],
                "sets": [sorted(u for u in range(inst.universe)
                                if (m >> u) & 1) for m in inst.set_masks],
                "meta": dict(inst.meta)}
    if isinstance(inst, ModularInstance):
        return {"type": "modular", "n": inst.n,
                "weights": [float(w) for w in inst.weights]}
    if isinstance(inst, EntropyInstance):
        return {"type": "entropy", "cards": list(inst.cards),
                "table": [float(p) for p in np.ravel(inst.table)]}
    if isinstance(inst, DifferenceInstance):
        return {"type": "difference", "f": instance_to_obj(inst.f),
                "h": instance_to_obj(inst.h)}
    raise DomainError(f"cannot serialize {type(inst).__name__}")


def _need(obj, key, where):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def obj_to_instance(obj, where="instance"):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    kind = _need(obj, "type", where)
    try:
        if kind == "cut":
            return CutInstance(_need(obj, "n", where), _need(obj, "edges", where),
                               meta=obj.get("meta"))
        if kind == "coverage":
            return CoverageInstance(_need(obj, "n", where),
                                    _need(obj, "universe", where),
                                    _need(obj, "weights", where),
                                    _need(obj, "sets", where),
                                    meta=obj.get("meta"))
        if kind == "modular":
            return ModularInstance(_need(obj, "n", where),
                                   _need(obj, "weights", where))
        if kind == "entropy":
            cards = _need(obj, "cards", where)
            flat = np.asarray(_need(obj, "table", where), dtype=np.float64)
            return EntropyInstance(cards, flat.reshape([int(c) for c in cards]))
        if kind == "difference":
            return DifferenceInstance(
                obj_to_instance(_need(obj, "f", where), where + ".f"),
                obj_to_instance(_need(obj, "h", where), where + ".h"))
    except DomainError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: bad field value ({exc})") from exc
    raise ParseError(f"{where}: unknown instance type {kind!r}")


def write_instance(inst, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_obj(inst), fh, indent=1)
        fh.write("\n")


def read_instance(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None
    return obj_to_instance(obj, where=str(path))


def write_trace(rows, path):
    """CSV with the exact column set the solver trace defines; floats use
    round-trip repr so identical runs produce identical bytes."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(TRACE_COLUMNS)
        for r in rows:
            out.writerow([r.iter, repr(float(r.time_ms)),
                          repr(float(r.dual_bound)), repr(float(r.oracle_value)),
                          repr(float(r.best_primal)), r.n_vertices, r.inner_steps])


def read_trace(path):
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    if not rows:
        raise ParseError(f"{path}: empty trace")
    if tuple(rows[0]) != TRACE_COLUMNS:
        raise ParseError(f"{path}: bad header {rows[0]!r}")
    out = []
    for ln, row in enumerate(rows[1:], start=2):
        if len(row) != len(TRACE_COLUMNS):
            raise ParseError(f"{path}:{ln}: expected {len(TRACE_COLUMNS)} fields")
        try:
            out.append(TraceRow(int(row[0]), float(row[1]), float(row[2]),
                                float(row[3]), float(row[4]), int(row[5]),
                                int(row[6])))
        except ValueError as exc:
            raise ParseError(f"{path}:{ln}: {exc}") from None
    return out
