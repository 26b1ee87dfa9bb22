"""Adjacent-ratio membership tests and a generator for the ratio classes.

A positive matrix belongs to the class with parameter c when every adjacent
2x2 window satisfies a(i,j)*a(i+1,j+1) >= c * a(i,j+1)*a(i+1,j); the strict
class requires strict inequality. The critical ratio is the minimum of those
window ratios, i.e. the largest c the matrix certifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .errors import (
    BadDomainError,
    FactorBelowCError,
    InconsistentCornerError,
    IndexOutOfRangeError,
    NonPositiveEntryError,
    TooSmallError,
)
from .matrices import Matrix
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    Scalar,
    as_fraction,
    as_scalar,
    format_scalar,
)


class Membership(Enum):
    YES = "Yes"
    NO = "No"
    UNCERTAIN = "Uncertain"


@dataclass(frozen=True)
class RatioReport:
    """Minimum adjacent 2x2 ratio and where it is attained.

    ``strict`` records, in the context of a membership check, whether the
    ratio strictly exceeded the constant being certified; a bare
    critical-ratio computation leaves it False.
    """

    critical_ratio: Scalar
    argmin_cell: tuple[int, int]
    strict: bool = False

    def to_json(self) -> dict:
        return {
            "critical_ratio": format_scalar(self.critical_ratio),
            "argmin_cell": list(self.argmin_cell),
            "strict": self.strict,
        }


def _require_positive(m: Matrix) -> None:
    for i in range(m.rows):
        for j in range(m.cols):
            x = m.entries[i * m.cols + j]
            if not x > 0:
                raise NonPositiveEntryError((i + 1, j + 1), x)


def critical_ratio(m: Matrix) -> RatioReport:
    """Exact minimum adjacent ratio of a positive matrix (ties: smallest i, then j)."""
    if m.rows < 2 or m.cols < 2:
        raise TooSmallError(f"need at least a 2x2 matrix, got {m.rows}x{m.cols}")
    _require_positive(m)
    best = None
    best_cell = None
    for i in range(1, m.rows):
        for j in range(1, m.cols):
            a = m.at(i, j)
            b = m.at(i, j + 1)
            c = m.at(i + 1, j)
            d = m.at(i + 1, j + 1)
            r = (a * d) / (b * c)
            if best is None or r < best:
                best = r
                best_cell = (i, j)
    return RatioReport(best, best_cell)


def is_member(m: Matrix, c, strict: bool = False, tol: float = DEFAULT_TOL) -> Membership:
    """Three-valued membership of m in the ratio class at constant c.

    ``c`` may be a rational, a float (converted exactly), or a certified
    interval. Exact matrices compare exactly against the interval endpoints;
    float matrices compare with relative tolerance ``tol``.
    """
    report = critical_ratio(m)
    return _membership_from_ratio(report.critical_ratio, c, strict, m.is_exact, tol)


def _membership_from_ratio(ratio, c, strict: bool, exact: bool,
                           tol: float = DEFAULT_TOL) -> Membership:
    ci = c if isinstance(c, RationalInterval) else RationalInterval.degenerate(as_fraction(c))
    if exact:
        if strict:
            if ratio > ci.hi:
                return Membership.YES
            if ratio <= ci.lo:
                return Membership.NO
        else:
            if ratio >= ci.hi:
                return Membership.YES
            if ratio < ci.lo:
                return Membership.NO
        return Membership.UNCERTAIN
    # float path: tolerance-qualified verdicts
    r = float(ratio)
    hi = float(ci.hi)
    lo = float(ci.lo)
    if strict:
        if r > hi * (1.0 + tol):
            return Membership.YES
        if r <= lo * (1.0 - tol):
            return Membership.NO
    else:
        if r >= hi * (1.0 - tol):
            return Membership.YES
        if r < lo * (1.0 - tol):
            return Membership.NO
    return Membership.UNCERTAIN


def lemma_a_margin(m: Matrix, c, cells: tuple[int, int, int, int]) -> Scalar:
    """Margin a(i,j)a(k,l) - c^((l-j)(k-i)) a(i,l)a(k,j) for i<k, j<l.

    Nonnegative whenever the matrix lies in the ratio class at c; at distance
    one this is exactly the adjacent-window condition.
    """
    i, k, j, l = cells
    if not (i < k and j < l):
        raise BadDomainError(f"need i<k and j<l, got {cells}")
    if not (1 <= i and k <= m.rows and 1 <= j and l <= m.cols):
        raise IndexOutOfRangeError(f"cells {cells} outside {m.rows}x{m.cols}")
    cc = as_scalar(c)
    power = (l - j) * (k - i)
    return m.at(i, j) * m.at(k, l) - cc ** power * m.at(i, l) * m.at(k, j)


def _rand_unit(rng: random.Random, strict: bool) -> Fraction:
    # uniform rational in [0,1) (or (0,1] when strict) from 30 seeded bits
    bits = rng.getrandbits(30)
    if strict:
        return Fraction(bits + 1, 2 ** 30 + 1)
    return Fraction(bits, 2 ** 30)


def generate_tp2c(
    k: int,
    c,
    first_row=None,
    first_col=None,
    factors=None,
    seed: int = 0,
    spread=Fraction(1),
    strict: bool = False,
) -> Matrix:
    """Generate a k x k matrix whose critical ratio is min of the used factors.

    Fills a(i+1,j+1) = r(i,j) * a(i,j+1) * a(i+1,j) / a(i,j), so every
    adjacent window ratio equals its factor exactly. ``factors`` is a
    constant, a mapping (i,j)->factor (missing windows default to c), or None
    for the seeded random policy c*(1 + u*spread).
    """
    if k < 1:
        raise TooSmallError(f"k must be >= 1, got {k}")
    cc = as_fraction(c) if not isinstance(c, float) else as_scalar(c)
    if cc < 1:
        raise BadDomainError(f"c must be >= 1, got {c}")
    first_row = [as_scalar(x) for x in (first_row if first_row is not None else [1] * k)]
    first_col = [as_scalar(x) for x in (first_col if first_col is not None else [1] * k)]
    if len(first_row) != k or len(first_col) != k:
        raise TooSmallError("first_row and first_col must have length k")
    for j, x in enumerate(first_row):
        if not x > 0:
            raise NonPositiveEntryError((1, j + 1), x)
    for i, x in enumerate(first_col):
        if not x > 0:
            raise NonPositiveEntryError((i + 1, 1), x)
    if first_row[0] != first_col[0]:
        raise InconsistentCornerError(
            f"first_row[1]={first_row[0]} differs from first_col[1]={first_col[0]}")

    rng = random.Random(seed)

    def factor_at(i: int, j: int):
        if factors is None:
            return cc * (1 + _rand_unit(rng, strict) * as_fraction(spread))
        if isinstance(factors, Mapping):
            return as_scalar(factors.get((i, j), cc))
        return as_scalar(factors)

    grid = [[None] * k for _ in range(k)]
    for j in range(k):
        grid[0][j] = first_row[j]
    for i in range(k):
        grid[i][0] = first_col[i]
    for i in range(1, k):
        for j in range(1, k):
            r = factor_at(i, j)
            too_low = (r <= cc) if strict else (r < cc)
            if too_low:
                raise FactorBelowCError(f"factor {format_scalar(r)} at ({i},{j}) below c={c}"
                                        + (" (strict)" if strict else ""))
            grid[i][j] = r * grid[i - 1][j] * grid[i][j - 1] / grid[i - 1][j - 1]
    return Matrix.from_rows(grid)


def report_with_strict(report: RatioReport, strict: bool) -> RatioReport:
    return replace(report, strict=strict)
