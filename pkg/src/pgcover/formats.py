"""Reading and writing cover and point-set files.

JSON::

    {"n": 2, "field": {"p": 5, "h": 1, "modulus": [0, 1]}, "hyperplanes": [[0, 1, 0], ...]}

Point sets use the key ``"points"`` instead of ``"hyperplanes"``.

Text: a header line ``n p h c_0 ... c_h`` followed by one coordinate vector
per line (space separated field reps). A line ``# points`` anywhere before
the first vector marks a point set; other ``#`` lines are comments.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .covers import PartialCover, PointSet
from .galois import FieldError, field_new
from .projective import GeometryError, space


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _rows(indices, pg) -> list[list[int]]:
    return [list(pg.coords[i]) for i in indices]


def to_json(obj: PartialCover | PointSet) -> dict[str, Any]:
    pg = obj.space
    key = "hyperplanes" if isinstance(obj, PartialCover) else "points"
    return {"n": pg.n, "field": pg.spec.to_json(), key: _rows(obj.indices, pg)}


def to_text(obj: PartialCover | PointSet) -> str:
    pg = obj.space
    spec = pg.spec
    lines = [" ".join(map(str, [pg.n, spec.p, spec.h, *spec.modulus]))]
    if isinstance(obj, PointSet):
        lines.append("# points")
    lines.extend(" ".join(map(str, row)) for row in _rows(obj.indices, pg))
    return "\n".join(lines) + "\n"


def dumps(obj: PartialCover | PointSet, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_json(obj)) + "\n"
    if fmt == "text":
        return to_text(obj)
    raise ValueError(f"unknown format {fmt!r}")


def from_json(data: Any) -> PartialCover | PointSet:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    for key in ("n", "field"):
        if key not in data:
            raise FormatError(f"missing key {key!r}")
    if ("hyperplanes" in data) == ("points" in data):
        raise FormatError("expected exactly one of 'hyperplanes' or 'points'")
    try:
        spec = field_new(int(data["field"]["p"]), int(data["field"]["h"]),
                         data["field"].get("modulus"))
        pg = space(int(data["n"]), spec)
    except (FieldError, GeometryError, KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"bad space description: {exc}") from exc
    key = "hyperplanes" if "hyperplanes" in data else "points"
    rows = data[key]
    if not isinstance(rows, list):
        raise FormatError(f"{key!r} must be a list")
    idx = []
    for k, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(c, int) for c in row):
            raise FormatError(f"{key}[{k}] must be a list of integers")
        try:
            idx.append(pg.index_of(row))
        except GeometryError as exc:
            raise FormatError(f"{key}[{k}]: {exc}") from exc
    cls = PartialCover if key == "hyperplanes" else PointSet
    return cls.of(pg, idx)


def from_text(text: str) -> PartialCover | PointSet:
    header = None
    is_points = False
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip() == "points":
                is_points = True
            continue
        tokens = raw.split()
        if header is None:
            header = (lineno, tokens)
        else:
            rows.append((lineno, tokens))
    if header is None:
        raise FormatError("empty file: missing header 'n p h modulus...'", 1)
    hl, ht = header
    nums = [_int(tok, hl, raw_col(text, hl, k)) for k, tok in enumerate(ht)]
    if len(nums) < 4:
        raise FormatError("header must read 'n p h c_0 ... c_h'", hl, 1)
    n, p, h, *modulus = nums
    try:
        pg = space(n, field_new(p, h, modulus))
    except (FieldError, GeometryError) as exc:
        raise FormatError(str(exc), hl, 1) from exc
    idx = []
    for lineno, tokens in rows:
        vec = [_int(tok, lineno, raw_col(text, lineno, k)) for k, tok in enumerate(tokens)]
        try:
            idx.append(pg.index_of(vec))
        except GeometryError as exc:
            raise FormatError(str(exc), lineno, 1) from exc
    return (PointSet if is_points else PartialCover).of(pg, idx)


def raw_col(text: str, lineno: int, token_no: int) -> int:
    """1-based column where the token_no-th token of a line starts."""
    line = text.splitlines()[lineno - 1]
    col, k = 0, -1
    in_tok = False
    for col, ch in enumerate(line):
        if not ch.isspace() and not in_tok:
            k += 1
            if k == token_no:
                return col + 1
        in_tok = not ch.isspace()
    return col + 1


def _int(tok: str, line: int, column: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", line, column) from None


def loads(text: str) -> PartialCover | PointSet:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from exc
        return from_json(data)
    return from_text(text)


def read(path: str | Path) -> PartialCover | PointSet:
    return loads(Path(path).read_text())


def format_for(path: str | Path) -> str:
    return "json" if str(path).endswith(".json") else "text"


def write(obj: PartialCover | PointSet, path: str | Path, fmt: str | None = None) -> None:
    Path(path).write_text(dumps(obj, fmt or format_for(path)))
