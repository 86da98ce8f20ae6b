"""CSV point/label files and deterministic JSON reports."""

from __future__ import annotations

import json
import math

import numpy as np

from .core import Dataset, Labeling, ValidationError


class ParseError(ValidationError):
    def __init__(self, path, line, col, msg):
        super().__init__(f"{path}:{line}:{col}: {msg}")
        self.path, self.line, self.col = path, line, col


def _rows(path, header: bool):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    lines = text.replace("\r\n", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    start = 1 if header else 0
    if len(lines) <= start:
        raise ValidationError(f"{path}: no data rows")
    for no, line in enumerate(lines[start:], start=start + 1):
        yield no, line


def parse_points(path, header: bool = False) -> Dataset:
    rows = []
    dim = None
    for no, line in _rows(path, header):
        fields = line.split(",")
        row = []
        for col, f in enumerate(fields, start=1):
            try:
                x = float(f)
            except ValueError:
                raise ParseError(path, no, col, f"not a number: {f.strip()!r}") from None
            if not math.isfinite(x):
                raise ParseError(path, no, col, "non-finite value")
            row.append(x)
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise ParseError(path, no, len(row), f"expected {dim} columns, got {len(row)}")
        rows.append(row)
    return Dataset(np.array(rows))


def parse_labels(path, k: int | None = None, header: bool = False) -> Labeling:
    ids = []
    for no, line in _rows(path, header):
        f = line.strip()
        try:
            v = int(f)
        except ValueError:
            raise ParseError(path, no, 1, f"not an integer label: {f!r}") from None
        if v < 0 or (k is not None and v >= k):
            raise ParseError(path, no, 1, f"label {v} outside [0, {k})")
        ids.append(v)
    return Labeling.from_array(np.array(ids, dtype=np.int64), k)


def write_points(path, data) -> None:
    pts = data.points if isinstance(data, Dataset) else np.asarray(data)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in pts:
            fh.write(",".join(format(float(x), ".17g") for x in row) + "\n")


def write_labels(path, labels: Labeling) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(f"{int(v)}\n" for v in labels.assign))


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        return ("[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq)
                + "\n" + end + "]")
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        s = format(x, ".17g")
        if "e" not in s and "." not in s and "n" not in s:
            s += ".0"
        return s
    return json.dumps(obj)


def emit_report(report, path) -> None:
    payload = report.to_dict() if hasattr(report, "to_dict") else report
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(payload) + "\n")
