"""The determinant-bound sequence F_m(c) in closed, recursive, and trig form.

F_0 = F_1 = 1 and F_m = F_{m-1} - F_{m-2}/c. At c = 4cos^2(phi) the sequence
equals sin((m+1)phi) / (c^(m/2) sin(phi)); its positive roots in c are
4cos^2(j*pi/(m+1)), the largest being the sharp order-m constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadDomainError
from .numerics import (
    RationalInterval,
    Scalar,
    as_scalar,
    ck_enclosure,
    four_cos_sq_enclosure,
)


@dataclass(frozen=True)
class FSequence:
    """Values F_0 .. F_M at a fixed c (scalar or certified interval)."""

    c: object
    values: tuple


def _coerce_c(c):
    if isinstance(c, RationalInterval):
        if c.lo <= 0:
            raise BadDomainError(f"c interval must be positive, got {c}")
        return c
    cc = as_scalar(c)
    if cc <= 0:
        raise BadDomainError(f"c must be positive, got {c}")
    return cc


def f_closed(m: int, c) -> Scalar:
    """Alternating closed form: sum_j C(m-j, j) (-1)^j c^(-j); exact for exact c."""
    if m < 0:
        raise BadDomainError(f"m must be >= 0, got {m}")
    cc = _coerce_c(c)
    if isinstance(cc, RationalInterval):
        raise TypeError("use f_recurrence to evaluate F over an interval")
    total = 0 * cc  # zero of the right kind
    c_pow = cc ** 0
    sign = 1
    for j in range(m // 2 + 1):
        total += sign * math.comb(m - j, j) / c_pow
        c_pow *= cc
        sign = -sign
    return total


def f_recurrence(M: int, c) -> FSequence:
    """F_0..F_M via the two-term recurrence; propagates intervals soundly."""
    if M < 0:
        raise BadDomainError(f"M must be >= 0, got {M}")
    cc = _coerce_c(c)
    if isinstance(cc, RationalInterval):
        one = RationalInterval.degenerate(1)
        inv_c = RationalInterval.degenerate(1) / cc
    elif isinstance(cc, Fraction):
        one = Fraction(1)
        inv_c = 1 / cc
    else:
        one = 1.0
        inv_c = 1.0 / cc
    values = [one, one]
    for _ in range(2, M + 1):
        values.append(values[-1] - values[-2] * inv_c)
    return FSequence(cc, tuple(values[: M + 1]))


def f_trig(m: int, phi: float) -> float:
    """Cross-check form sin((m+1)phi)/(c^(m/2) sin(phi)) with c = 4cos^2(phi)."""
    if m < 0:
        raise BadDomainError(f"m must be >= 0, got {m}")
    if not (0.0 < phi < math.pi / 2):
        raise BadDomainError(f"phi must lie in (0, pi/2), got {phi}")
    c = 4.0 * math.cos(phi) ** 2
    return math.sin((m + 1) * phi) / (c ** (m / 2.0) * math.sin(phi))


def f_roots(n: int, width=Fraction(1, 10 ** 12)) -> list[RationalInterval]:
    """Certified enclosures of the floor(n/2) positive roots, decreasing in j.

    The j-th root is 4cos^2(j*pi/(n+1)); the first is the sharp order-n
    constant.
    """
    if n < 2:
        raise BadDomainError(f"n must be >= 2, got {n}")
    return [four_cos_sq_enclosure(j, n + 1, width) for j in range(1, n // 2 + 1)]


_T4_CK_WIDTH = Fraction(1, 10 ** 30)


def t4_margin(k: int, j: int):
    """Margin of F_{j-1}(ck) - F_{j-2}(ck)/ck^2 - ck^(-j) >= F_j(ck).

    Exact where the order-k constant is rational; otherwise evaluated exactly
    at the midpoint of a width-1e-30 enclosure and returned as a float.
    """
    if k < 3:
        raise BadDomainError(f"k must be >= 3, got {k}")
    if not (2 <= j <= k - 1):
        raise BadDomainError(f"j must lie in [2, {k - 1}], got {j}")
    enc = ck_enclosure(k, _T4_CK_WIDTH)
    exact = enc.is_degenerate
    c = enc.lo if exact else enc.mid
    margin = (f_closed(j - 1, c) - f_closed(j - 2, c) / c ** 2
              - c ** -j - f_closed(j, c))
    return margin if exact else float(margin)
