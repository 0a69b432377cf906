"""CSV matrix formats, report assembly and deterministic serialization.

Complex matrices travel as CSV with two columns (re, im) per entry,
row-major, with an optional single header line.  Floats are written with
`repr`, which round-trips bit for bit, and reports serialize to JSON
with sorted keys so identical runs produce identical bytes.
"""
from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParseError, ValidationError

SCHEMA_VERSION = "1.0"

VERDICTS = ("pass", "fail", "strict", "non-strict", "inconclusive", "tainted")


# -- complex matrix CSV ------------------------------------------------------

def load_complex_matrix(path, expected_shape=None):
    """Read a complex matrix stored row-major with (re, im) column pairs.

    A single leading non-numeric row is treated as a header.  Parse
    failures report file, line and column; a shape mismatch names the
    file.
    """
    rows = []
    width = None
    first_data_line = True
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not cells or all(c == "" for c in cells):
                continue
            parsed = []
            bad_col = None
            for col, cell in enumerate(cells, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    bad_col = col
                    break
            if bad_col is not None:
                if first_data_line:
                    first_data_line = False  # header line, skip it
                    continue
                raise ParseError(path, lineno, bad_col,
                                 f"not a number: {cells[bad_col - 1]!r}")
            first_data_line = False
            if len(parsed) % 2:
                raise ParseError(path, lineno, len(parsed),
                                 "expected (re, im) column pairs, got an odd "
                                 "column count")
            if width is None:
                width = len(parsed)
            elif len(parsed) != width:
                raise ParseError(path, lineno, len(parsed),
                                 f"ragged row: {len(parsed)} columns after "
                                 f"{width}")
            rows.append(parsed)
    if not rows:
        raise ParseError(path, 1, 1, "no numeric rows found")
    arr = np.asarray(rows, dtype=float)
    mat = arr[:, 0::2] + 1j * arr[:, 1::2]
    if expected_shape is not None and mat.shape != tuple(expected_shape):
        raise DimensionError(
            f"{path}: expected shape {tuple(expected_shape)}, found {mat.shape}")
    return mat


def save_complex_matrix(path, matrix):
    """Write a complex matrix as (re, im) column pairs, `repr` precision."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=complex))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in mat:
            out = []
            for v in row:
                out.append(repr(float(v.real)))
                out.append(repr(float(v.imag)))
            writer.writerow(out)


def save_function_csv(path, f):
    """Write a sampled function as (x, re, im) rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "re", "im"])
        for x, v in zip(f.grid.nodes, f.values):
            writer.writerow([repr(float(x)), repr(float(v.real)),
                             repr(float(v.imag))])


# -- report values -----------------------------------------------------------

def jsonify(value):
    """Recursively convert numbers, arrays and tuple-keyed dicts to plain
    JSON-ready data.  Complex scalars become {"re": ..., "im": ...};
    tuple keys join with '->'."""
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if isinstance(k, tuple):
                key = "->".join(str(p) for p in k)
            else:
                key = str(k)
            out[key] = jsonify(v)
        return out
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonify(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if value is None or isinstance(value, str):
        return value
    raise ValidationError(f"cannot serialize {type(value).__name__} into a report")


@dataclass
class Verdict:
    """A named verdict with its numeric evidence; evidence is mandatory."""

    name: str
    verdict: str
    evidence: dict

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValidationError(f"unknown verdict {self.verdict!r}")
        if not self.evidence:
            raise ValidationError("no verdict without numbers")


@dataclass
class Section:
    name: str
    records: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)


@dataclass
class DiagnosticsReport:
    meta: dict
    sections: list

    def to_dict(self):
        return {
            "meta": jsonify(self.meta),
            "sections": [
                {
                    "name": s.name,
                    "records": jsonify(s.records),
                    "verdicts": [
                        {"name": v.name, "verdict": v.verdict,
                         "evidence": jsonify(v.evidence)}
                        for v in s.verdicts
                    ],
                }
                for s in self.sections
            ],
        }

    def verdict_values(self):
        return [v.verdict for s in self.sections for v in s.verdicts]


def render_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def render_csv(report):
    """Flat, deterministic CSV rendering: one row per record entry or
    verdict evidence item, compound values JSON-encoded in place."""
    lines = [["section", "kind", "name", "key", "value"]]
    meta = jsonify(report.meta)
    for k in sorted(meta):
        lines.append(["", "meta", "", k, json.dumps(meta[k], sort_keys=True)])
    for s in report.sections:
        records = jsonify(s.records)
        for k in sorted(records):
            lines.append([s.name, "record", "", k,
                          json.dumps(records[k], sort_keys=True)])
        for v in s.verdicts:
            lines.append([s.name, "verdict", v.name, "verdict", v.verdict])
            ev = jsonify(v.evidence)
            for k in sorted(ev):
                lines.append([s.name, "verdict", v.name, k,
                              json.dumps(ev[k], sort_keys=True)])
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(lines)
    return buf.getvalue()


def save_report(report, path, fmt="json"):
    if fmt == "json":
        text = render_json(report)
    elif fmt == "csv":
        text = render_csv(report)
    else:
        raise ValidationError(f"unknown report format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(text)


def config_digest(config):
    """sha256 of the canonical JSON form of a configuration mapping."""
    blob = json.dumps(jsonify(config), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
