"""Minor-enumeration oracles and certificate-producing sufficient conditions.

The brute-force minor scan is the ground truth: every sufficient-condition
check can ask it to confirm the concluded class on desk-scale matrices. A
certificate records which ratio hypothesis was certified against which
constant, the verdict, and the conclusion's own oracle evidence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .chebyshev import f_closed
from .errors import (
    BandDegenerateError,
    HypothesisUnmetError,
    NonSquareError,
    NotBandedError,
    OracleMismatchError,
    OrderTooLargeError,
    TooSmallError,
)
from .matrices import BandProfile, Matrix, SubmatrixSelector, band_profile
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    Scalar,
    Sign,
    SignClass,
    as_fraction,
    bareiss_int_det,
    ck_enclosure,
    det_exact,
    det_float,
    format_scalar,
    sign_exact,
)
from .ratio import (
    Membership,
    RatioReport,
    _membership_from_ratio,
    critical_ratio,
    is_member,
    report_with_strict,
)

DEFAULT_ORACLE_CAP = 8
_CK_WIDTH = Fraction(1, 10 ** 18)


@lru_cache(maxsize=None)
def _ck(k: int) -> RationalInterval:
    return ck_enclosure(k, _CK_WIDTH)


class Verdict(Enum):
    HOLDS = "Holds"
    FAILS_HYPOTHESIS = "FailsHypothesis"
    UNCERTAIN = "Uncertain"


@dataclass(frozen=True)
class Hypothesis:
    """Ratio evidence compared against a certified constant."""

    ratio: RatioReport
    constant: RationalInterval
    strict: bool
    membership: Membership

    def to_json(self) -> dict:
        return {
            "ratio": self.ratio.to_json(),
            "constant": self.constant.to_json(),
            "strict": self.strict,
            "membership": self.membership.value,
        }


@dataclass(frozen=True)
class Certificate:
    claim: str
    verdict: Verdict
    hypothesis: Hypothesis | None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, (Fraction,)):
                return format_scalar(v)
            if isinstance(v, (SignClass, RationalInterval, RatioReport, SubmatrixSelector)):
                return v.to_json()
            if isinstance(v, Sign):
                return v.value
            if isinstance(v, Membership):
                return v.value
            if isinstance(v, MinorScan):
                return v.to_json()
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return {
            "claim": self.claim,
            "verdict": self.verdict.value,
            "hypothesis": self.hypothesis.to_json() if self.hypothesis else None,
            "details": enc(self.details),
        }


@dataclass(frozen=True)
class MinorScan:
    """Summary of an exhaustive (or contiguous) minor enumeration."""

    order: int
    total: int
    min_value: Scalar
    argmin: SubmatrixSelector
    all_nonnegative: bool
    all_positive: bool
    min_sign: SignClass

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "total": self.total,
            "min_value": format_scalar(self.min_value),
            "argmin": self.argmin.to_json(),
            "all_nonnegative": self.all_nonnegative,
            "all_positive": self.all_positive,
            "min_sign": self.min_sign.to_json(),
        }


def _selectors(n_rows: int, n_cols: int, order: int, mode: str):
    if mode == "all":
        for rsel in itertools.combinations(range(1, n_rows + 1), order):
            for csel in itertools.combinations(range(1, n_cols + 1), order):
                yield rsel, csel
    elif mode == "contiguous":
        for r0 in range(1, n_rows - order + 2):
            rsel = tuple(range(r0, r0 + order))
            for c0 in range(1, n_cols - order + 2):
                yield rsel, tuple(range(c0, c0 + order))
    else:
        raise ValueError(f"unknown scan mode {mode!r}")


def _minor_det_exact(rows: list[list[Fraction]], rsel, csel) -> Fraction:
    sub = [[rows[i - 1][j - 1] for j in csel] for i in rsel]
    scale = 1
    int_rows = []
    for r in sub:
        mult = math.lcm(*(x.denominator for x in r))
        int_rows.append([int(x * mult) for x in r])
        scale *= mult
    return Fraction(bareiss_int_det(int_rows), scale)


def minor_scan(m: Matrix, max_order: int, mode: str = "all",
               tol: float = DEFAULT_TOL) -> MinorScan:
    """Minimum minor over all orders 1..max_order, with a deterministic argmin.

    Ties break toward the smallest (order, row indices, column indices). The
    contiguous mode restricts to consecutive-index windows; it is a strict
    screening fast path, never a substitute for the full oracle on
    non-strict claims.
    """
    if max_order < 1 or max_order > min(m.rows, m.cols):
        raise OrderTooLargeError(
            f"order {max_order} not in [1, {min(m.rows, m.cols)}]")
    exact = m.is_exact
    rows = m.to_rows()
    if exact:
        rows = [[Fraction(x) for x in r] for r in rows]

    total = 0
    best = None
    best_sel = None
    best_sign = None
    any_negative = False
    any_nonpositive = False
    for order in range(1, max_order + 1):
        for rsel, csel in _selectors(m.rows, m.cols, order, mode):
            total += 1
            if exact:
                if order == 1:
                    val = rows[rsel[0] - 1][csel[0] - 1]
                else:
                    val = _minor_det_exact(rows, rsel, csel)
                sc = sign_exact(val)
            else:
                sub = Matrix.from_rows([[rows[i - 1][j - 1] for j in csel] for i in rsel])
                val, sc = det_float(sub, tol)
            if sc.verdict is Sign.NEGATIVE:
                any_negative = True
            if sc.verdict is not Sign.POSITIVE:
                any_nonpositive = True
            if best is None or val < best:
                best = val
                best_sel = SubmatrixSelector(rsel, csel)
                best_sign = sc
    return MinorScan(
        order=max_order,
        total=total,
        min_value=best,
        argmin=best_sel,
        all_nonnegative=not any_negative,
        all_positive=not any_nonpositive,
        min_sign=best_sign,
    )


def is_tpk(m: Matrix, k: int, tol: float = DEFAULT_TOL) -> tuple[bool, MinorScan]:
    """Brute-force test: all minors of order <= k nonnegative."""
    scan = minor_scan(m, k, mode="all", tol=tol)
    return scan.all_nonnegative, scan


def is_stpk(m: Matrix, k: int, tol: float = DEFAULT_TOL) -> tuple[bool, MinorScan]:
    """Brute-force test: all minors of order <= k strictly positive."""
    scan = minor_scan(m, k, mode="all", tol=tol)
    return scan.all_positive, scan


def is_tp(m: Matrix, tol: float = DEFAULT_TOL) -> tuple[bool, MinorScan]:
    return is_tpk(m, min(m.rows, m.cols), tol)


def is_stp(m: Matrix, tol: float = DEFAULT_TOL) -> tuple[bool, MinorScan]:
    return is_stpk(m, min(m.rows, m.cols), tol)


# ---------------------------------------------------------------------------
# Sufficient-condition certificates
# ---------------------------------------------------------------------------

def _det_with_sign(m: Matrix, tol: float) -> tuple[Scalar, SignClass]:
    if m.is_exact:
        d = det_exact(m)
        return d, sign_exact(d)
    return det_float(m, tol)


def _hypothesis(m: Matrix, constant: RationalInterval, strict: bool,
                tol: float) -> Hypothesis:
    report = critical_ratio(m)
    member = is_member(m, constant, strict=strict, tol=tol)
    report = report_with_strict(report, strict and member is Membership.YES)
    return Hypothesis(report, constant, strict, member)


def _verdict_of(member: Membership) -> Verdict:
    if member is Membership.YES:
        return Verdict.HOLDS
    if member is Membership.NO:
        return Verdict.FAILS_HYPOTHESIS
    return Verdict.UNCERTAIN


def theorem1_check(m: Matrix, strict: bool = False, tol: float = DEFAULT_TOL) -> Certificate:
    """Order-k sharp ratio condition implies det >= 0 (strict: det > 0).

    The hypothesis is certified against the order-k constant enclosure; when
    it holds, the determinant itself is computed and its sign checked
    against the concluded claim.
    """
    if not m.is_square:
        raise NonSquareError(f"matrix is {m.rows}x{m.cols}")
    k = m.rows
    if k < 2:
        raise TooSmallError("need a k x k matrix with k >= 2")
    hyp = _hypothesis(m, _ck(k), strict, tol)
    claim = "DetPositive" if strict else "DetNonNegative"
    verdict = _verdict_of(hyp.membership)
    details: dict = {"k": k}
    if verdict is Verdict.HOLDS:
        d, sc = _det_with_sign(m, tol)
        details["det"] = d
        details["det_sign"] = sc
        ok = sc.verdict is Sign.POSITIVE if strict else sc.verdict is not Sign.NEGATIVE
        if not ok and m.is_exact:
            raise OracleMismatchError(
                f"certified hypothesis but det={format_scalar(d)} contradicts {claim}")
        details["conclusion_checked"] = ok
    return Certificate(claim, verdict, hyp, details)


def theorem2_check(m: Matrix, k: int, strict: bool = False, tol: float = DEFAULT_TOL,
                   oracle_cap: int = DEFAULT_ORACLE_CAP) -> Certificate:
    """Ratio >= order-k constant implies membership in the order-k minor class."""
    if k < 2:
        raise TooSmallError("order k must be >= 2")
    if k > min(m.rows, m.cols):
        raise OrderTooLargeError(f"order {k} exceeds min dimension {min(m.rows, m.cols)}")
    hyp = _hypothesis(m, _ck(k), strict, tol)
    claim = f"STPk({k})" if strict else f"TPk({k})"
    verdict = _verdict_of(hyp.membership)
    details: dict = {"k": k}
    if verdict is Verdict.HOLDS and max(m.rows, m.cols) <= oracle_cap:
        ok, scan = (is_stpk if strict else is_tpk)(m, k, tol)
        details["oracle"] = scan
        details["oracle_confirms"] = ok
        if not ok and m.is_exact:
            raise OracleMismatchError(f"oracle refutes {claim} despite certified hypothesis")
    return Certificate(claim, verdict, hyp, details)


def theorem3_check(m: Matrix, tol: float = DEFAULT_TOL,
                   oracle_cap: int = DEFAULT_ORACLE_CAP) -> Certificate:
    """Ratio >= 4 implies strict total positivity."""
    four = RationalInterval.degenerate(4)
    hyp = _hypothesis(m, four, False, tol)
    verdict = _verdict_of(hyp.membership)
    details: dict = {}
    if verdict is Verdict.HOLDS and max(m.rows, m.cols) <= oracle_cap:
        ok, scan = is_stp(m, tol)
        details["oracle"] = scan
        details["oracle_confirms"] = ok
        if not ok and m.is_exact:
            raise OracleMismatchError("oracle refutes STP despite ratio >= 4")
    return Certificate("STP", verdict, hyp, details)


def theorem5_check(m: Matrix, tol: float = DEFAULT_TOL) -> Certificate:
    """Banded variant: ratio condition inside the band implies det >= 0.

    Windows whose right-hand side touches a structural zero hold vacuously;
    all other windows are checked against the order-k constant. A full
    (no-zero) band delegates to the positive-entry check.
    """
    if not m.is_square:
        raise NonSquareError(f"matrix is {m.rows}x{m.cols}")
    k = m.rows
    band = band_profile(m)
    if band is None:
        raise NotBandedError("support pattern is not a positive band")
    if band.s == band.l:
        raise BandDegenerateError(f"band requires s < l, got s = l = {band.s}")
    if band.s == -(k - 1) and band.l == k - 1:
        return theorem1_check(m, strict=False, tol=tol)
    constant = _ck(k)
    exact = m.is_exact
    worst = None  # (ratio, window)
    membership = Membership.YES
    for i in range(1, k):
        for j in range(1, k):
            rhs = m.at(i, j + 1) * m.at(i + 1, j)
            if rhs == 0:
                continue  # vacuous window
            ratio = (m.at(i, j) * m.at(i + 1, j + 1)) / rhs
            if worst is None or ratio < worst[0]:
                worst = (ratio, (i, j))
            verdict = _membership_from_ratio(ratio, constant, False, exact, tol)
            if verdict is Membership.NO:
                membership = Membership.NO
            elif verdict is Membership.UNCERTAIN and membership is Membership.YES:
                membership = Membership.UNCERTAIN
    if worst is None:
        # every window touches a structural zero; hypothesis holds vacuously
        vacuous = Fraction(4) if exact else 4.0
        worst = (vacuous, (1, 1))
    report = RatioReport(worst[0], worst[1], False)
    hyp = Hypothesis(report, constant, False, membership)
    verdict = _verdict_of(membership)
    details: dict = {"k": k, "band": {"s": band.s, "l": band.l}}
    if membership is Membership.NO:
        details["failing_window"] = list(worst[1])
    if verdict is Verdict.HOLDS:
        d, sc = _det_with_sign(m, tol)
        details["det"] = d
        details["det_sign"] = sc
        ok = sc.verdict is not Sign.NEGATIVE
        if not ok and exact:
            raise OracleMismatchError("certified band hypothesis but det < 0")
        details["conclusion_checked"] = ok
    return Certificate("DetNonNegative", verdict, hyp, details)


def theorem6_bound(m: Matrix, c, tol: float = DEFAULT_TOL) -> tuple[Scalar, Certificate]:
    """Certified lower bound det >= a_11 a_22 ... a_kk * F_k(c).

    Requires the matrix ratio to certify c and c to certify the order-k
    constant; both comparisons are conservative when c is an interval.
    """
    if not m.is_square:
        raise NonSquareError(f"matrix is {m.rows}x{m.cols}")
    k = m.rows
    if k < 2:
        raise TooSmallError("need a k x k matrix with k >= 2")
    ci = c if isinstance(c, RationalInterval) else RationalInterval.degenerate(as_fraction(c))
    ck = _ck(k)
    if not ci.lo >= ck.hi:
        raise HypothesisUnmetError(
            f"c={ci} is not certified >= the order-{k} constant {ck}")
    member = is_member(m, ci, strict=False, tol=tol)
    if member is not Membership.YES:
        raise HypothesisUnmetError(f"critical ratio does not certify c={ci} ({member.value})")
    report = report_with_strict(critical_ratio(m), False)
    hyp = Hypothesis(report, ci, False, member)

    diag = m.at(1, 1)
    for i in range(2, k + 1):
        diag = diag * m.at(i, i)
    if ci.is_degenerate:
        f_val = f_closed(k, ci.lo) if m.is_exact else f_closed(k, float(ci.lo))
        bound = diag * f_val
    else:
        from .chebyshev import f_recurrence
        f_int = f_recurrence(k, ci).values[k]
        bound = diag * f_int.lo  # conservative certified bound
    d, sc = _det_with_sign(m, tol)
    if m.is_exact and isinstance(bound, Fraction):
        ok = d >= bound
        if not ok:
            raise OracleMismatchError(
                f"det {format_scalar(d)} below certified bound {format_scalar(bound)}")
    else:
        scale = max(abs(float(d)), abs(float(bound)), 1.0)
        ok = float(d) >= float(bound) - tol * scale
    details = {
        "k": k,
        "bound": bound,
        "det": d,
        "det_sign": sc,
        "margin": d - bound,
        "conclusion_checked": ok,
    }
    return bound, Certificate("DetLowerBound", Verdict.HOLDS, hyp, details)


# ---------------------------------------------------------------------------
# Instance-level verification of the determinant-bound inequality chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainInequality:
    ineq: str
    index: int | None
    margin: Scalar
    holds: bool

    def to_json(self) -> dict:
        return {"ineq": self.ineq, "index": self.index,
                "margin": format_scalar(self.margin), "holds": self.holds}


def proof_chain_check(m: Matrix, c, tol: float = DEFAULT_TOL) -> list[ChainInequality]:
    """Evaluate the inequality chain behind the determinant bound on one instance.

    Computes every trailing principal minor and returns the signed margin of
    each inequality (h1)-(h3), (l1)-(l5), plus the strict variant (l6) when
    the last window ratio strictly exceeds c. All margins must be
    nonnegative whenever hypothesis ratio >= c >= order-n constant holds.
    """
    if not m.is_square:
        raise NonSquareError(f"matrix is {m.rows}x{m.cols}")
    n = m.rows
    if n < 2:
        raise TooSmallError("need n >= 2")
    cc = as_fraction(c) if m.is_exact else float(c)
    report = critical_ratio(m)
    ckn = _ck(n)
    if not (report.critical_ratio >= cc):
        raise HypothesisUnmetError(f"critical ratio {report.critical_ratio} below c={c}")
    if not as_fraction(cc) >= ckn.hi:
        raise HypothesisUnmetError(f"c={c} below the order-{n} constant {ckn}")

    rows = m.to_rows()

    def trailing(i: int) -> Scalar:
        # det of M(i..n, i..n), 1-based; empty determinant is 1
        if i > n:
            return Fraction(1) if m.is_exact else 1.0
        sub = Matrix.from_rows([r[i - 1:] for r in rows[i - 1:]])
        return det_exact(sub) if m.is_exact else det_float(sub, tol)[0]

    delta = {i: trailing(i) for i in range(1, n + 2)}
    a = lambda i, j: m.at(i, j)
    F = lambda mm: f_closed(mm, cc)
    out: list[ChainInequality] = []

    def add(name: str, idx, margin, strict_holds: bool = False):
        holds = margin > 0 if strict_holds else margin >= 0
        out.append(ChainInequality(name, idx, margin, holds))

    add("h1", None, delta[1])
    add("h2", None, delta[1] - (a(1, 1) * delta[2] - a(1, 2) * a(2, 1) * delta[3]))
    add("h3", None, a(1, 1) * delta[2] - delta[1])
    for mm in range(0, n - 2):  # l1: m = 0..n-3
        margin = delta[mm + 1] - a(mm + 1, mm + 1) * (
            delta[mm + 2] - a(mm + 2, mm + 2) * delta[mm + 3] / cc)
        add("l1", mm, margin)
    diag_prefix = {0: Fraction(1) if m.is_exact else 1.0}
    for i in range(1, n + 1):
        diag_prefix[i] = diag_prefix[i - 1] * a(i, i)
    lhs_l4 = {}
    for mm in range(1, n - 1):  # l2/l4: m = 1..n-2
        lhs = F(mm) * delta[mm + 1] - F(mm - 1) * a(mm + 1, mm + 1) * delta[mm + 2] / cc
        lhs_l4[mm] = lhs
        add("l2", mm, delta[1] - diag_prefix[mm] * lhs)
        tail = diag_prefix[n] / diag_prefix[mm]  # a_{m+1,m+1} ... a_{n,n}
        add("l4", mm, lhs - tail * F(n))
    for mm in range(1, n - 2):  # l3: m = 1..n-3
        rhs = a(mm + 1, mm + 1) * (
            F(mm + 1) * delta[mm + 2] - F(mm) * a(mm + 2, mm + 2) * delta[mm + 3] / cc)
        add("l3", mm, lhs_l4[mm] - rhs)
    add("l5", None, delta[n - 1] - (1 - 1 / cc) * a(n - 1, n - 1) * a(n, n))

    last_ratio = (a(n - 1, n - 1) * a(n, n)) / (a(n - 1, n) * a(n, n - 1))
    if last_ratio > cc:
        for mm in range(1, n - 1):
            add("l6", mm, lhs_l4[mm] - (diag_prefix[n] / diag_prefix[mm]) * F(n),
                strict_holds=True)
    return out
