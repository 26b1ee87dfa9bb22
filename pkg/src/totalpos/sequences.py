"""Sequence-level corollaries: banded Toeplitz truncations, ratio conditions,
and Hankel determinant batteries for moment sequences.

Every check here is a finite truncation of an infinite-matrix statement and
is reported as such; the library never claims membership in an infinite
class outright.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import (
    NonPositiveEntryError,
    OrderTooLargeError,
    ParseError,
    TooShortError,
)
from .matrices import Matrix, hankel_from
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    Scalar,
    SignClass,
    as_scalar,
    ck_enclosure,
    det_exact,
    det_float,
    format_scalar,
    is_exact,
    parse_scalar,
    sign_exact,
)
from .positivity import Certificate, Hypothesis, MinorScan, Verdict, minor_scan
from .ratio import Membership, RatioReport, critical_ratio

DEFAULT_TRUNCATION = 10


def parse_sequence(text: str) -> list[Scalar]:
    """One-line CSV of cells, or a JSON list of "p/q"/decimal values."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty sequence input")
    if stripped.startswith("["):
        try:
            items = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        out = []
        for idx, cell in enumerate(items):
            if isinstance(cell, str):
                try:
                    out.append(parse_scalar(cell))
                except ValueError as exc:
                    raise ParseError(str(exc), col=idx + 1) from None
            elif isinstance(cell, (int, float)) and not isinstance(cell, bool):
                out.append(as_scalar(cell if isinstance(cell, float) else int(cell)))
            else:
                raise ParseError(f"bad sequence entry {cell!r}", col=idx + 1)
        return out
    cells = [c for c in stripped.replace("\n", ",").split(",") if c.strip()]
    out = []
    for idx, cell in enumerate(cells):
        try:
            out.append(parse_scalar(cell))
        except ValueError as exc:
            raise ParseError(str(exc), col=idx + 1) from None
    return out


def toeplitz_truncation(seq: Sequence[Scalar], n: int) -> Matrix:
    """N x N upper-banded Toeplitz truncation: entry (i,j) = seq[j-i], 0 below."""
    terms = [as_scalar(x) for x in seq]
    zero: Scalar = 0.0 if any(isinstance(t, float) for t in terms) else Fraction(0)
    rows = [[terms[j - i] if 0 <= j - i < len(terms) else zero for j in range(n)]
            for i in range(n)]
    return Matrix.from_rows(rows)


def pfm_check(seq: Sequence[Scalar], m: int, n: int,
              tol: float = DEFAULT_TOL) -> tuple[bool, MinorScan]:
    """Brute-force minors of orders 1..m of the N x N truncation (finite check)."""
    if m > n:
        raise OrderTooLargeError(f"order m={m} exceeds truncation N={n}")
    terms = [as_scalar(x) for x in seq]
    if not terms or not terms[0] > 0:
        raise NonPositiveEntryError((1, 1), terms[0] if terms else None)
    for idx, t in enumerate(terms):
        if t < 0:
            raise NonPositiveEntryError((1, idx + 1), t)
    scan = minor_scan(toeplitz_truncation(terms, n), m, mode="all", tol=tol)
    return scan.all_nonnegative, scan


def hutchinson_ratio(seq: Sequence[Scalar]) -> Scalar:
    """Minimum interior ratio a_n^2 / (a_{n-1} a_{n+1}) of a positive sequence."""
    terms = [as_scalar(x) for x in seq]
    if len(terms) < 3:
        raise TooShortError(f"need at least 3 terms, got {len(terms)}")
    for idx, t in enumerate(terms):
        if not t > 0:
            raise NonPositiveEntryError((1, idx + 1), t)
    return min(terms[i] ** 2 / (terms[i - 1] * terms[i + 1])
               for i in range(1, len(terms) - 1))


_CK_WIDTH = Fraction(1, 10 ** 18)


def corollary5_check(seq: Sequence[Scalar], m: int, n: int | None = None,
                     tol: float = DEFAULT_TOL) -> Certificate:
    """Interior ratio >= order-m constant implies the order-m sequence class.

    The hypothesis is certified against the constant enclosure; the
    conclusion is cross-checked by the brute-force truncation oracle at
    size N (finite-truncation evidence, labeled as such).
    """
    terms = [as_scalar(x) for x in seq]
    if n is None:
        n = min(len(terms), DEFAULT_TRUNCATION)
    ratio = hutchinson_ratio(terms)
    constant = ck_enclosure(m, _CK_WIDTH)
    exact = all(is_exact(t) for t in terms)
    if (ratio >= constant.hi) if exact else (float(ratio) >= float(constant.hi) * (1 - tol)):
        membership = Membership.YES
    elif ratio < constant.lo:
        membership = Membership.NO
    else:
        membership = Membership.UNCERTAIN
    hyp = Hypothesis(RatioReport(ratio, (1, 1), False), constant, False, membership)
    verdict = {Membership.YES: Verdict.HOLDS, Membership.NO: Verdict.FAILS_HYPOTHESIS,
               Membership.UNCERTAIN: Verdict.UNCERTAIN}[membership]
    details: dict = {"m": m, "truncation_N": n, "finite_truncation": True}
    if verdict is Verdict.HOLDS:
        ok, scan = pfm_check(terms, m, n, tol)
        details["oracle"] = scan
        details["oracle_confirms"] = ok
    return Certificate(f"PF({m})-truncated", verdict, hyp, details)


def hankel_moment_check(seq: Sequence[Scalar], max_order: int,
                        tol: float = DEFAULT_TOL) -> list[tuple[int, Scalar, SignClass]]:
    """Determinants of the leading (j+1)x(j+1) Hankel matrices, j = 0..max_order.

    All-Positive is the finite-order necessary battery for a Hamburger
    moment sequence; a Zero or Negative refutes strict positive
    definiteness at that order.
    """
    terms = [as_scalar(x) for x in seq]
    if len(terms) < 2 * max_order + 1:
        raise TooShortError(
            f"need at least {2 * max_order + 1} terms for order {max_order}, got {len(terms)}")
    out = []
    for j in range(max_order + 1):
        h = hankel_from(terms, j + 1)
        if h.is_exact:
            d = det_exact(h)
            out.append((j + 1, d, sign_exact(d)))
        else:
            d, sc = det_float(h, tol)
            out.append((j + 1, d, sc))
    return out


def corollary3_moment_check(seq: Sequence[Scalar], max_order: int,
                            tol: float = DEFAULT_TOL) -> Certificate:
    """Log-convexity ratio s_{n-1}s_{n+1}/s_n^2 >= 4 certifies the moment battery.

    On a certified hypothesis the Hankel matrix of the sequence has critical
    ratio >= 4 (the two ratios coincide by the Hankel index identity), and
    the determinant battery is verified positive up to the requested order.
    """
    terms = [as_scalar(x) for x in seq]
    if len(terms) < 2 * max_order + 1:
        raise TooShortError(
            f"need at least {2 * max_order + 1} terms for order {max_order}, got {len(terms)}")
    if len(terms) < 3:
        raise TooShortError(f"need at least 3 terms, got {len(terms)}")
    for idx, t in enumerate(terms):
        if not t > 0:
            raise NonPositiveEntryError((1, idx + 1), t)
    ratio = min(terms[i - 1] * terms[i + 1] / terms[i] ** 2
                for i in range(1, len(terms) - 1))
    constant = RationalInterval.degenerate(4)
    membership = Membership.YES if ratio >= 4 else Membership.NO
    hyp = Hypothesis(RatioReport(ratio, (1, 1), False), constant, False, membership)
    verdict = Verdict.HOLDS if membership is Membership.YES else Verdict.FAILS_HYPOTHESIS
    details: dict = {"max_order": max_order, "finite_truncation": True}
    if verdict is Verdict.HOLDS:
        half = (len(terms) - 1) // 2
        hankel = hankel_from(terms, half + 1)
        hankel_ratio = critical_ratio(hankel).critical_ratio
        # identity holds over the interior indices the truncated matrix sees
        seen = min(terms[i - 1] * terms[i + 1] / terms[i] ** 2
                   for i in range(1, 2 * half))
        details["hankel_critical_ratio"] = format_scalar(hankel_ratio)
        details["index_identity_holds"] = hankel_ratio == seen
        battery = hankel_moment_check(terms, max_order, tol)
        details["battery"] = [[order, format_scalar(d), sc.verdict.value]
                              for order, d, sc in battery]
        details["battery_all_positive"] = all(
            sc.verdict.value == "Positive" for _, _, sc in battery)
    return Certificate("HamburgerMomentBattery", verdict, hyp, details)
