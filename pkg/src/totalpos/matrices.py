"""Dense matrix container, structured constructors, band detection, and I/O.

The public API is 1-based: ``m.at(i, j)`` addresses row i, column j starting
at 1, matching the usual minor notation. Storage is row-major and private.
Matrices are immutable after construction and freely shareable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    IndexOutOfRangeError,
    NonSquareError,
    NotStrictlyIncreasingError,
    ParseError,
    SelectorShapeError,
    TooShortError,
)
from .numerics import Scalar, as_scalar, format_scalar, is_exact, parse_scalar


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major Scalars

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise IndexOutOfRangeError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise SelectorShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        width = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != width:
                raise SelectorShapeError("ragged rows")
        flat = tuple(as_scalar(x) for r in rows for x in r)
        return Matrix(n, width, flat)

    # -- access -------------------------------------------------------------
    def at(self, i: int, j: int) -> Scalar:
        """1-based entry access."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRangeError(f"({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.entries)

    @property
    def all_positive(self) -> bool:
        return all(x > 0 for x in self.entries)

    @property
    def all_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def to_float(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(float(x) for x in self.entries))

    def submatrix(self, sel: "SubmatrixSelector") -> "Matrix":
        return submatrix(self, sel)

    def __str__(self):
        return "\n".join(",".join(format_scalar(x) for x in row) for row in self.to_rows())


@dataclass(frozen=True)
class SubmatrixSelector:
    """Strictly increasing 1-based row/column index lists of equal length."""

    row_indices: tuple
    col_indices: tuple

    def __post_init__(self):
        rows = tuple(int(i) for i in self.row_indices)
        cols = tuple(int(j) for j in self.col_indices)
        object.__setattr__(self, "row_indices", rows)
        object.__setattr__(self, "col_indices", cols)
        if len(rows) != len(cols):
            raise SelectorShapeError(f"selector shapes differ: {len(rows)} rows vs {len(cols)} cols")
        if not rows:
            raise SelectorShapeError("empty selector")
        for seq, name in ((rows, "row"), (cols, "col")):
            if seq[0] < 1:
                raise IndexOutOfRangeError(f"{name} indices are 1-based, got {seq[0]}")
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise NotStrictlyIncreasingError(f"{name} indices not strictly increasing: {seq}")

    @property
    def order(self) -> int:
        return len(self.row_indices)

    def to_json(self) -> dict:
        return {"rows": list(self.row_indices), "cols": list(self.col_indices)}


def submatrix(m: Matrix, sel: SubmatrixSelector) -> Matrix:
    """Extract the minor's matrix: entry (r,c) = m(sel.rows[r], sel.cols[c])."""
    if sel.row_indices[-1] > m.rows or sel.col_indices[-1] > m.cols:
        raise IndexOutOfRangeError(
            f"selector {sel.row_indices}x{sel.col_indices} outside {m.rows}x{m.cols}")
    ents = tuple(m.at(i, j) for i in sel.row_indices for j in sel.col_indices)
    return Matrix(sel.order, sel.order, ents)


def toeplitz_from(diag_values: Mapping[int, Scalar], n: int) -> Matrix:
    """Toeplitz matrix with entry (i,j) = diag_values[j-i]; missing offsets are zero."""
    vals = {int(k): as_scalar(v) for k, v in diag_values.items()}
    fill: Scalar = 0.0 if any(isinstance(v, float) for v in vals.values()) else Fraction(0)
    ents = tuple(vals.get(j - i, fill) for i in range(n) for j in range(n))
    return Matrix(n, n, ents)


def hankel_from(seq: Sequence[Scalar], n: int) -> Matrix:
    """Hankel matrix with entry (i,j) = seq[i+j-2] (1-based i, j)."""
    terms = [as_scalar(x) for x in seq]
    if len(terms) < 2 * n - 1:
        raise TooShortError(f"need at least {2 * n - 1} terms for a {n}x{n} Hankel matrix, "
                            f"got {len(terms)}")
    ents = tuple(terms[i + j] for i in range(n) for j in range(n))
    return Matrix(n, n, ents)


@dataclass(frozen=True)
class BandProfile:
    """Support pattern: entries positive for s <= j-i <= l and zero otherwise."""

    s: int
    l: int


def band_profile(m: Matrix) -> BandProfile | None:
    """Detect the banded-support pattern; None when the pattern does not match."""
    offsets = [j - i for i in range(m.rows) for j in range(m.cols)
               if m.entries[i * m.cols + j] != 0]
    if not offsets:
        return None
    s, l = min(offsets), max(offsets)
    for i in range(m.rows):
        for j in range(m.cols):
            x = m.entries[i * m.cols + j]
            if s <= j - i <= l:
                if not x > 0:
                    return None
            elif x != 0:
                return None
    return BandProfile(s, l)


# ---------------------------------------------------------------------------
# Serialization: CSV cells are "p/q" / integer (exact) or decimal (float);
# JSON is {"rows": n, "cols": n, "entries": [["p/q", ...], ...]}.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParseReport:
    matrix: Matrix
    promoted: bool
    warnings: tuple


def _promote_if_mixed(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], bool, list[str]]:
    kinds = {is_exact(x) for r in rows for x in r}
    if kinds == {True, False}:
        warn = ["mixed exact and decimal cells: all entries promoted to floats"]
        return [[float(x) for x in r] for r in rows], True, warn
    return rows, False, []


def parse_matrix_csv(text: str) -> ParseReport:
    rows: list[list[Scalar]] = []
    width = None
    for ln, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"expected {width} cells, got {len(cells)}", line=ln)
        row = []
        for cn, cell in enumerate(cells, start=1):
            try:
                row.append(parse_scalar(cell))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), line=ln, col=cn) from None
        rows.append(row)
    if not rows:
        raise ParseError("no rows in CSV input")
    rows, promoted, warnings = _promote_if_mixed(rows)
    return ParseReport(Matrix.from_rows(rows), promoted, tuple(warnings))


def matrix_to_csv(m: Matrix) -> str:
    return "\n".join(",".join(format_scalar(x) for x in row) for row in m.to_rows()) + "\n"


def matrix_to_json_dict(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(x) if is_exact(x) else float(x) for x in row]
                    for row in m.to_rows()],
    }


def parse_matrix_json(text: str) -> ParseReport:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}", line=exc.lineno, col=exc.colno) from None
    try:
        ents = obj["entries"]
        rows = []
        for r in ents:
            row = []
            for cell in r:
                if isinstance(cell, str):
                    row.append(parse_scalar(cell))
                elif isinstance(cell, (int, float)) and not isinstance(cell, bool):
                    row.append(as_scalar(cell if isinstance(cell, float) else int(cell)))
                else:
                    raise ValueError(f"bad entry {cell!r}")
            rows.append(row)
        declared = (int(obj["rows"]), int(obj["cols"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix JSON: {exc}") from None
    rows, promoted, warnings = _promote_if_mixed(rows)
    m = Matrix.from_rows(rows)
    if (m.rows, m.cols) != declared:
        raise ParseError(f"declared shape {declared} does not match entries {m.rows}x{m.cols}")
    return ParseReport(m, promoted, tuple(warnings))


def parse_matrix(text: str) -> ParseReport:
    """Sniff JSON vs CSV and parse accordingly."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_matrix_json(text)
    return parse_matrix_csv(text)
