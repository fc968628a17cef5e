"""Reading linear spaces from JSON and rendering result documents.

Input format: {"rows": d, "cols": n, "entries": [["p/q", ...], ...]}, with an
optional "perp" list of rows giving a basis of the orthogonal complement.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .detrep import LinearSpace
from .errors import PreconditionError
from .linalg import RatMatrix
from .poly import MultiPoly
from .rational import format_rational, parse_rational


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise PreconditionError(f"{path}: cannot read input ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _parse_entry(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise PreconditionError(f"{where}: entries must be rational strings or integers, got {x!r}")
    try:
        return parse_rational(str(x))
    except (ValueError, ZeroDivisionError):
        raise PreconditionError(f"{where}: cannot parse {x!r} as a rational") from None


def parse_rows(obj, where: str, rows: int | None = None, cols: int | None = None) -> list[list[Fraction]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise PreconditionError(f"{where}: expected a list of rows")
    if rows is not None and len(obj) != rows:
        raise PreconditionError(f"{where}: expected {rows} rows, got {len(obj)}")
    out = []
    for i, r in enumerate(obj):
        if cols is not None and len(r) != cols:
            raise PreconditionError(f"{where}[{i}]: expected {cols} entries, got {len(r)}")
        out.append([_parse_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)])
    if out and len({len(r) for r in out}) != 1:
        raise PreconditionError(f"{where}: rows have different lengths")
    return out


def parse_matrix(obj, where: str = "input") -> RatMatrix:
    if not isinstance(obj, dict):
        raise PreconditionError(f"{where}: expected an object with rows, cols, entries")
    missing = [k for k in ("rows", "cols", "entries") if k not in obj]
    if missing:
        raise PreconditionError(f"{where}: missing key {missing[0]!r}")
    d, n = obj["rows"], obj["cols"]
    if not isinstance(d, int) or not isinstance(n, int) or d < 1 or n < 1:
        raise PreconditionError(f"{where}: rows and cols must be positive integers")
    return RatMatrix.from_rows(parse_rows(obj["entries"], f"{where}.entries", d, n))


def parse_space(obj, where: str = "input") -> tuple[LinearSpace, list[list[Fraction]] | None]:
    """The space and the optional complement basis."""
    mat = parse_matrix(obj, where)
    space = LinearSpace(mat)
    perp = None
    if "perp" in obj:
        perp = parse_rows(obj["perp"], f"{where}.perp", space.n - space.d, space.n)
    return space, perp


def load_space(path) -> tuple[LinearSpace, list[list[Fraction]] | None]:
    return parse_space(load_json(path), str(path))


def load_matrix(path) -> RatMatrix:
    return parse_matrix(load_json(path), str(path))


def space_json(rows, perp=None) -> dict:
    rows = [list(r) for r in rows]
    doc = {"rows": len(rows), "cols": len(rows[0]),
           "entries": [[format_rational(x) for x in r] for r in rows]}
    if perp is not None:
        doc["perp"] = [[format_rational(x) for x in r] for r in perp]
    return doc


def matrix_json(m: RatMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


# --- output -----------------------------------------------------------------

def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _is_poly(x) -> bool:
    return isinstance(x, dict) and set(x) == {"vars", "terms"}


def _scalar_text(x) -> str:
    if _is_poly(x):
        return str(MultiPoly.from_json(x))
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, list) and all(not isinstance(y, (list, dict)) for y in x):
        return "[" + ", ".join(str(y) for y in x) + "]"
    return str(x)


def _flatten(doc, prefix: str, out: list) -> None:
    if isinstance(doc, dict) and not _is_poly(doc):
        for key, val in doc.items():
            _flatten(val, f"{prefix}.{key}" if prefix else str(key), out)
    elif isinstance(doc, list) and doc and any(isinstance(y, (list, dict)) for y in doc):
        for i, val in enumerate(doc):
            _flatten(val, f"{prefix}[{i}]", out)
    else:
        out.append((prefix, _scalar_text(doc)))


def render_text(doc) -> str:
    """Aligned ``key  value`` lines for humans."""
    rows: list = []
    _flatten(doc, "", rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)
