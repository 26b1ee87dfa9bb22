"""Scalar backends, determinant kernels, and certified constant enclosures.

Scalars are either exact (``fractions.Fraction``, arbitrary precision, always
in lowest terms with positive denominator) or approximate (binary64 floats).
Python's numeric tower gives the promotion rule for free: arithmetic on two
exact scalars stays exact, mixing exact and approximate yields a float.

All certified constants are represented as rational intervals whose endpoints
are produced by exact rational arithmetic only; no float enters a certified
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import (
    BadDomainError,
    BadWidthError,
    EnclosureWidthError,
    NonExactEntryError,
    NonSquareError,
)

Scalar = Union[Fraction, float]

#: Default sign tolerance, relative to the Hadamard bound of the matrix.
DEFAULT_TOL = 2.0 ** -30


# ---------------------------------------------------------------------------
# Scalar helpers
# ---------------------------------------------------------------------------

def as_scalar(x) -> Scalar:
    """Coerce ints to exact scalars; pass Fractions and floats through."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            raise BadDomainError(f"non-finite scalar: {x}")
        return x
    raise TypeError(f"not a scalar: {x!r}")


def is_exact(x: Scalar) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def as_fraction(x) -> Fraction:
    """Exact conversion (floats convert to their exact binary value)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            raise BadDomainError(f"non-finite value: {x}")
        return Fraction(x)
    if isinstance(x, str):
        return parse_exact(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


def format_scalar(x: Scalar) -> str:
    """Canonical text form: ``p`` or ``p/q`` for exact values, repr for floats."""
    if is_exact(x):
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return repr(float(x))


def parse_exact(text: str) -> Fraction:
    t = text.strip()
    if "/" in t:
        num, _, den = t.partition("/")
        return Fraction(int(num.strip()), int(den.strip()))
    return Fraction(int(t))


def parse_scalar(text: str):
    """Parse a cell: ``p/q`` or integer literal -> exact, decimal literal -> float."""
    t = text.strip()
    if not t:
        raise ValueError("empty cell")
    try:
        return parse_exact(t)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ZeroDivisionError):
            raise ValueError(f"zero denominator in {text!r}") from None
    v = float(t)  # raises ValueError on junk
    if math.isnan(v) or math.isinf(v):
        raise ValueError(f"non-finite literal {text!r}")
    return v


# ---------------------------------------------------------------------------
# Sign classification
# ---------------------------------------------------------------------------

class Sign(Enum):
    NEGATIVE = "Negative"
    ZERO = "Zero"
    POSITIVE = "Positive"
    UNCERTAIN = "Uncertain"


@dataclass(frozen=True)
class SignClass:
    """Four-valued sign verdict plus the magnitude that backs it."""

    verdict: Sign
    witness_magnitude: Scalar

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value,
                "witness_magnitude": format_scalar(self.witness_magnitude)}


def sign_exact(x: Fraction) -> SignClass:
    """Exact classification; never Uncertain."""
    if x > 0:
        return SignClass(Sign.POSITIVE, abs(x))
    if x < 0:
        return SignClass(Sign.NEGATIVE, abs(x))
    return SignClass(Sign.ZERO, Fraction(0))


def sign_float(value: float, scale: float, tol: float = DEFAULT_TOL) -> SignClass:
    """Tolerant classification of ``value`` against ``tol * scale``."""
    if abs(value) <= tol * scale:
        if value == 0.0:
            return SignClass(Sign.ZERO, 0.0)
        return SignClass(Sign.UNCERTAIN, abs(value))
    return SignClass(Sign.POSITIVE if value > 0 else Sign.NEGATIVE, abs(value))


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    """Certified enclosure [lo, hi] of a real constant, rational endpoints."""

    lo: Fraction
    hi: Fraction
    width_bound: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise BadDomainError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")
        wb = self.width_bound
        if wb is None:
            wb = self.hi - self.lo
        else:
            wb = as_fraction(wb)
            if self.hi - self.lo > wb:
                raise BadDomainError("interval wider than its width bound")
        object.__setattr__(self, "width_bound", wb)

    # -- queries ----------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def encloses(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # -- constructors -------------------------------------------------------
    @staticmethod
    def degenerate(x) -> "RationalInterval":
        f = as_fraction(x)
        return RationalInterval(f, f)

    @staticmethod
    def _of(x) -> "RationalInterval":
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval.degenerate(x)

    # -- arithmetic (exact endpoints, no rounding needed) -------------------
    def __add__(self, other):
        o = RationalInterval._of(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-RationalInterval._of(other))

    def __rsub__(self, other):
        return RationalInterval._of(other) - self

    def __mul__(self, other):
        o = RationalInterval._of(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise BadDomainError("reciprocal of an interval containing zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * RationalInterval._of(other).reciprocal()

    def __rtruediv__(self, other):
        return RationalInterval._of(other) * self.reciprocal()

    def square(self) -> "RationalInterval":
        a, b = abs(self.lo), abs(self.hi)
        hi = max(a, b) ** 2
        lo = Fraction(0) if self.lo <= 0 <= self.hi else min(a, b) ** 2
        return RationalInterval(lo, hi)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise BadDomainError("interval powers must be nonnegative integers")
        result = RationalInterval.degenerate(1)
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            base = base.square()
            e >>= 1
        return result

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"lo": format_scalar(self.lo), "hi": format_scalar(self.hi)}

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


# ---------------------------------------------------------------------------
# Certified enclosures of the angular constants
# ---------------------------------------------------------------------------

def _coerce_width(width) -> Fraction:
    try:
        w = as_fraction(width)
    except (TypeError, BadDomainError):
        raise BadWidthError(f"bad width: {width!r}") from None
    if w <= 0:
        raise BadWidthError(f"width must be positive, got {w}")
    return w


def _atan_inv_bounds(m: int, terms: int) -> tuple[Fraction, Fraction]:
    # Alternating series for arctan(1/m); consecutive partial sums bracket.
    x2 = Fraction(1, m * m)
    term = Fraction(1, m)
    s = Fraction(0)
    sign = 1
    for j in range(terms):
        s += sign * term / (2 * j + 1)
        term *= x2
        sign = -sign
    nxt = sign * term / (2 * terms + 1)
    other = s + nxt
    return (min(s, other), max(s, other))


@lru_cache(maxsize=None)
def _pi_bounds(level: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds on pi, snapped to denominator 10**(25+20*level)."""
    digits = 25 + 20 * level
    a_terms = int(digits / 1.39) + 6   # 5^-(2j+1) shrinks ~1.4 digits per term
    b_terms = int(digits / 4.75) + 4
    a_lo, a_hi = _atan_inv_bounds(5, a_terms)
    b_lo, b_hi = _atan_inv_bounds(239, b_terms)
    lo = 16 * a_lo - 4 * b_hi
    hi = 16 * a_hi - 4 * b_lo
    d = 10 ** digits
    lo_snap = Fraction(math.floor(lo * d), d)
    hi_snap = Fraction(math.ceil(hi * d), d)
    return lo_snap, hi_snap


def _cos_bounds(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    # Taylor partial sum with Lagrange remainder |R| <= x^(2N)/(2N)!.
    x2 = x * x
    s = Fraction(0)
    term = Fraction(1)
    sign = 1
    for j in range(terms):
        s += sign * term
        term = term * x2 / ((2 * j + 1) * (2 * j + 2))
        sign = -sign
    return s - term, s + term


# 4cos^2(j*pi/m) = 2 + 2cos(2j*pi/m) is rational exactly when cos(2j*pi/m)
# is one of 0, +-1/2, +-1 (Niven); reduced 2j/m indexes the table.
_RATIONAL_COS2 = {
    Fraction(0): Fraction(4),
    Fraction(1, 3): Fraction(3),
    Fraction(1, 2): Fraction(2),
    Fraction(2, 3): Fraction(1),
    Fraction(1): Fraction(0),
    Fraction(4, 3): Fraction(1),
    Fraction(3, 2): Fraction(2),
    Fraction(5, 3): Fraction(3),
    Fraction(2): Fraction(4),
}


def four_cos_sq_enclosure(j: int, m: int, width) -> RationalInterval:
    """Certified enclosure of 4*cos^2(j*pi/m) for 0 < j/m <= 2/3."""
    w = _coerce_width(width)
    if j < 1 or m < 2 or Fraction(j, m) > Fraction(2, 3):
        raise BadDomainError(f"angle {j}*pi/{m} outside supported range")
    key = Fraction(2 * j, m)
    if key in _RATIONAL_COS2:
        v = _RATIONAL_COS2[key]
        return RationalInterval(v, v, w)
    ratio = Fraction(j, m)
    for level in range(3):
        pi_lo, pi_hi = _pi_bounds(level)
        x_lo, x_hi = pi_lo * ratio, pi_hi * ratio
        for terms in (14, 24, 40, 64):
            # cos is decreasing on [0, pi]
            c_lo, _ = _cos_bounds(x_hi, terms)
            _, c_hi = _cos_bounds(x_lo, terms)
            c_lo = max(c_lo, Fraction(-1))
            c_hi = min(c_hi, Fraction(1))
            enclosure = 4 * RationalInterval(c_lo, c_hi).square()
            if enclosure.width <= w / 2:
                lo, hi = _snap_outward(enclosure.lo, enclosure.hi, w / 2)
                return RationalInterval(lo, hi, w)
    raise EnclosureWidthError(f"cannot certify width {w} for 4cos^2({j}pi/{m})")


def _snap_outward(lo: Fraction, hi: Fraction, slack: Fraction) -> tuple[Fraction, Fraction]:
    """Round endpoints outward onto a power-of-ten grid adding at most slack."""
    d = 1
    while Fraction(2, d) > slack:
        d *= 10
    return (Fraction(math.floor(lo * d), d), Fraction(math.ceil(hi * d), d))


def ck_enclosure(k: int, width=Fraction(1, 10 ** 12)) -> RationalInterval:
    """Enclosure of the sharp order-k constant 4*cos^2(pi/(k+1)); k >= 2."""
    if not isinstance(k, int) or k < 2:
        raise BadDomainError(f"order must be an integer >= 2, got {k}")
    return four_cos_sq_enclosure(1, k + 1, width)


def constant_c_tilde(width) -> RationalInterval:
    """Enclosure of the unique real root of x^3 - 5x^2 + 4x - 1."""
    w = _coerce_width(width)

    def p(x: Fraction) -> Fraction:
        return ((x - 5) * x + 4) * x - 1

    lo, hi = Fraction(4), Fraction(5)
    # p(4) = -1 < 0 < 19 = p(5); bisection keeps opposite endpoint signs.
    while hi - lo > w:
        mid = (lo + hi) / 2
        v = p(mid)
        if v < 0:
            lo = mid
        elif v > 0:
            hi = mid
        else:
            return RationalInterval(mid, mid, w)
    return RationalInterval(lo, hi, w)


def _inv_power_sum_bounds(d: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """Bounds on sum_{n>=1} d^(-n^2): partial sum plus a geometric tail."""
    s = Fraction(0)
    for n in range(1, terms + 1):
        s += d ** -(n * n)
    # exponents beyond (terms+1)^2 cover every integer >= (terms+1)^2
    tail = d ** -((terms + 1) ** 2) * d / (d - 1)
    return s, s + tail


def constant_d(width) -> RationalInterval:
    """Enclosure of the d > 1 solving sum_{n>=1} d^(-n^2) = 1/4."""
    w = _coerce_width(width)
    quarter = Fraction(1, 4)

    def side(d: Fraction) -> int:
        # +1 when the sum is certified above 1/4 (so d is below the root)
        terms = 3
        while terms <= 64:
            s_lo, s_hi = _inv_power_sum_bounds(d, terms)
            if s_lo > quarter:
                return 1
            if s_hi < quarter:
                return -1
            terms += 2
        raise EnclosureWidthError(f"cannot separate the defining sum from 1/4 at d={d}")

    lo, hi = Fraction(4), Fraction(5)
    while hi - lo > w:
        mid = (lo + hi) / 2
        if side(mid) > 0:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi, w)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational strictly inside the open interval (lo, hi)."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise BadDomainError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_pos(-hi, -lo)
    return _simplest_pos(lo, hi)


def _simplest_pos(lo: Fraction, hi: Fraction) -> Fraction:
    # Stern-Brocot descent; 0 <= lo < hi
    n = lo.numerator // lo.denominator
    z = n + 1
    if z < hi:
        return Fraction(z)
    a, b = lo - n, hi - n
    if a == 0:
        inv = Fraction(1) / b
        k = inv.numerator // inv.denominator + 1
        return n + Fraction(1, k)
    return n + 1 / _simplest_pos(1 / b, 1 / a)


# ---------------------------------------------------------------------------
# Determinant kernels
# ---------------------------------------------------------------------------

def _extract_rows(m) -> list[list]:
    if hasattr(m, "to_rows"):
        return m.to_rows()
    rows = [list(r) for r in m]
    return rows


def _check_square(rows: list[list]) -> int:
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise NonSquareError(f"matrix is {n}x{len(r)}, not square")
    return n


def bareiss_int_det(rows: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix; exact determinant."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for jj in range(k + 1, n):
                row_i[jj] = (row_i[jj] * pivot - factor * row_k[jj]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_exact(m) -> Fraction:
    """Exact determinant of a square matrix of exact scalars.

    Denominators are cleared per row, then a fraction-free (division
    controlled) elimination runs over integers; the result is the exact
    rational determinant.
    """
    rows = _extract_rows(m)
    n = _check_square(rows)
    if n == 0:
        return Fraction(1)
    int_rows: list[list[int]] = []
    scale = 1
    for i, row in enumerate(rows):
        fr = []
        for j, x in enumerate(row):
            if not is_exact(x):
                raise NonExactEntryError(f"entry ({i + 1},{j + 1}) is not exact: {x!r}")
            fr.append(Fraction(x))
        mult = math.lcm(*(f.denominator for f in fr))
        int_rows.append([int(f * mult) for f in fr])
        scale *= mult
    return Fraction(bareiss_int_det(int_rows), scale)


def hadamard_bound(rows: Sequence[Sequence[float]]) -> float:
    """Product of row Euclidean norms; upper bound for |det|."""
    bound = 1.0
    for r in rows:
        bound *= math.sqrt(math.fsum(float(x) * float(x) for x in r))
    return bound


def det_float(m, tol: float = DEFAULT_TOL) -> tuple[float, SignClass]:
    """Partial-pivoted float determinant with a Hadamard-relative sign verdict.

    The verdict is Zero/Uncertain whenever |det| <= tol * HadamardBound(m);
    otherwise the sign of the computed value is reported.
    """
    rows = _extract_rows(m)
    n = _check_square(rows)
    a = [[float(x) for x in r] for r in rows]
    bound = hadamard_bound(a)
    det = 1.0
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[pivot_row][k] == 0.0:
            det = 0.0
            break
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f != 0.0:
                row_i = a[i]
                row_k = a[k]
                for jj in range(k + 1, n):
                    row_i[jj] -= f * row_k[jj]
    return det, sign_float(det, bound, tol)
