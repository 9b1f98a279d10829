"""Reading matrix and judgment files; deterministic CSV/JSON rendering."""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import JudgmentSet, RatingScale, RawJudgment


class InputError(Exception):
    """File could not be read or parsed (CLI exit code 2)."""


def fmt_number(x):
    """Shortest round-trip decimal; integral values lose their trailing ``.0``."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    s = repr(x)
    return s[:-2] if s.endswith(".0") else s


def fmt_human(x):
    return f"{float(x):.6g}"


def dumps_json(obj):
    """Compact JSON with fixed key order (insertion order) and :func:`fmt_number` floats."""
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, float, np.floating, np.integer)):
        return fmt_number(obj.item() if isinstance(obj, np.generic) else obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_lines(rows):
    return "".join(",".join(c if isinstance(c, str) else fmt_number(c) for c in row) + "\n" for row in rows)


def matrix_to_csv(A):
    return csv_lines(np.asarray(A).tolist())


def matrix_to_json(A):
    return dumps_json(np.asarray(A).tolist()) + "\n"


def parse_matrix_csv(text):
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            rows.append([float(c) for c in row])
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric matrix entry in {row!r}") from None
    return _check_grid(rows)


def _check_grid(rows):
    n = len(rows)
    if n == 0:
        raise InputError("matrix is empty")
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"row {r} does not have {n} entries; matrix must be square")
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(f"entry ({r}, {c}) is not a number: {v!r}")
    return np.array(rows, dtype=float)


def parse_judgments(obj):
    try:
        n = obj["n"]
        scale = obj["scale"]
        raw = obj["judgments"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise InputError(f"'n' must be an integer, got {n!r}")
        js = [RawJudgment(int(d["i"]), int(d["j"]), float(d["value"])) for d in raw]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed judgment file: {exc}") from None
    return JudgmentSet(n, RatingScale(scale), tuple(js))


def load(path):
    """Load a matrix or judgment file.

    Returns ``(kind, payload)`` where kind is ``"csv"`` or ``"json"`` with a raw
    float array, or ``"judgments"`` with a :class:`JudgmentSet`.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    if p.suffix.lower() == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
        if isinstance(obj, dict) and "judgments" in obj:
            return "judgments", parse_judgments(obj)
        if isinstance(obj, dict) and "matrix" in obj:
            obj = obj["matrix"]
        if not isinstance(obj, list):
            raise InputError(f"{path}: expected a matrix (array of rows) or a judgment object")
        return "json", _check_grid(obj)
    return "csv", parse_matrix_csv(text)
