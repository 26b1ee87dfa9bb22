"""Explicit families showing the sharp constants cannot be improved.

Two witness families: a tridiagonal-with-cascade symmetric Toeplitz matrix
(float entries, tolerance-certified) and a two-parameter Hankel matrix
(rational entries, exactly certified). Both produce matrices inside the
ratio class at any requested c below the sharp order-k constant while having
negative determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chebyshev import f_closed
from .errors import (
    BadDomainError,
    BadEpsilonsError,
    CNotBelowCkError,
    NoConvergenceError,
    OracleMismatchError,
)
from .matrices import Matrix, hankel_from, toeplitz_from
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    Scalar,
    Sign,
    SignClass,
    as_fraction,
    as_scalar,
    ck_enclosure,
    det_exact,
    det_float,
    format_scalar,
    four_cos_sq_enclosure,
    sign_exact,
    simplest_between,
)
from .ratio import Membership, critical_ratio, is_member

_ENC_WIDTH = Fraction(1, 10 ** 18)


def toeplitz_mn(n: int, phi: float) -> Matrix:
    """Tridiagonal symmetric Toeplitz: diagonal 2cos(phi), off-diagonals 1."""
    if n < 1:
        raise BadDomainError(f"n must be >= 1, got {n}")
    if not (0.0 <= phi < math.pi / 2):
        raise BadDomainError(f"phi must lie in [0, pi/2), got {phi}")
    d = 2.0 * math.cos(phi)
    return toeplitz_from({-1: 1.0, 0: d, 1: 1.0}, n)


def det_mn_closed(n: int, phi: float) -> float:
    """Closed-form determinant sin((n+1)phi)/sin(phi) of the tridiagonal family."""
    if n < 1:
        raise BadDomainError(f"n must be >= 1, got {n}")
    if not (0.0 < phi < math.pi / 2):
        raise BadDomainError(f"phi must lie in (0, pi/2), got {phi}")
    return math.sin((n + 1) * phi) / math.sin(phi)


def epsilon_cascade(n: int, phi: float, safety=Fraction(1, 2)) -> list[float]:
    """Off-band entries eps_1 > ... > eps_{n-2} > 0 preserving the ratio class.

    Each value saturates its window constraint, then is scaled by ``safety``:
    eps_1 = s / (4cos^2(phi) * 2cos(phi)), eps_2 = s * eps_1^2 / 4cos^2(phi),
    eps_j = s * eps_{j-1}^2 / (4cos^2(phi) * eps_{j-2}).
    """
    if n < 3:
        raise BadDomainError(f"n must be >= 3, got {n}")
    if not (0.0 < phi < math.pi / 2):
        raise BadDomainError(f"phi must lie in (0, pi/2), got {phi}")
    s = float(safety)
    if not (0.0 < s <= 1.0):
        raise BadDomainError(f"safety must lie in (0, 1], got {safety}")
    c = 4.0 * math.cos(phi) ** 2
    eps = [s / (c * 2.0 * math.cos(phi))]
    if n >= 4:
        eps.append(s * eps[0] ** 2 / c)
    for _ in range(4, n):
        eps.append(s * eps[-1] ** 2 / (c * eps[-2]))
    if any(e <= 0.0 for e in eps) or any(a <= b for a, b in zip(eps, eps[1:])):
        raise BadEpsilonsError(f"cascade is not strictly decreasing positive: {eps}")
    return eps


def toeplitz_tn(n: int, phi: float, epsilons) -> Matrix:
    """Symmetric Toeplitz with diagonal 2cos(phi), first off-diagonal 1, then eps."""
    if n < 3:
        raise BadDomainError(f"n must be >= 3, got {n}")
    if not (0.0 < phi < math.pi / 2):
        raise BadDomainError(f"phi must lie in (0, pi/2), got {phi}")
    eps = [float(e) for e in epsilons]
    if len(eps) != n - 2:
        raise BadEpsilonsError(f"need {n - 2} epsilons for n={n}, got {len(eps)}")
    if any(e <= 0.0 for e in eps) or any(a <= b for a, b in zip(eps, eps[1:])):
        raise BadEpsilonsError(f"epsilons must be strictly decreasing positive: {eps}")
    diags: dict[int, float] = {0: 2.0 * math.cos(phi), 1: 1.0, -1: 1.0}
    for j, e in enumerate(eps, start=2):
        diags[j] = e
        diags[-j] = e
    return toeplitz_from(diags, n)


@dataclass(frozen=True)
class WitnessResult:
    """A matrix certified inside the ratio class at c_target with det < 0."""

    matrix: Matrix
    c_target: Fraction
    family: str
    membership: Membership
    critical_ratio: Scalar
    det: Scalar
    det_sign: SignClass
    exact: bool
    params: dict

    def to_json(self) -> dict:
        from .matrices import matrix_to_json_dict

        def enc(v):
            if isinstance(v, Fraction):
                return format_scalar(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return {
            "family": self.family,
            "c_target": format_scalar(self.c_target),
            "membership": self.membership.value,
            "critical_ratio": format_scalar(self.critical_ratio),
            "det": format_scalar(self.det),
            "det_sign": self.det_sign.to_json(),
            "exact": self.exact,
            "params": {k: enc(v) for k, v in self.params.items()},
            "matrix": matrix_to_json_dict(self.matrix),
        }


def _certify_c_below_ck(k: int, c: Fraction) -> RationalInterval:
    enc = ck_enclosure(k, _ENC_WIDTH)
    if c >= enc.hi:
        raise CNotBelowCkError(
            f"c={format_scalar(c)} is not below the order-{k} constant {enc}", enclosure=enc)
    if c >= enc.lo:
        raise CNotBelowCkError(
            f"c={format_scalar(c)} falls inside the order-{k} constant enclosure {enc}",
            enclosure=enc, uncertain=True)
    return enc


def _emit(result: WitnessResult, tol: float) -> WitnessResult:
    # every witness is re-verified on emission, never sampled
    if result.membership is not Membership.YES:
        raise OracleMismatchError(f"witness membership not certified: {result.membership}")
    if result.det_sign.verdict is not Sign.NEGATIVE:
        raise OracleMismatchError(f"witness determinant not negative: {result.det_sign}")
    return result


def toeplitz_witness(k: int, c, tol: float = DEFAULT_TOL,
                     max_halvings: int = 60) -> WitnessResult:
    """Toeplitz matrix in the ratio class at c (< order-k constant) with det < 0.

    Picks c' = max(c, midpoint of the certified gap between the second root
    and the sharp constant), sets phi = arccos(sqrt(c')/2), and shrinks the
    cascade scale geometrically until the determinant verdict is Negative.
    Membership at the requested c follows from monotonicity of the classes.
    """
    cf = as_fraction(c)
    if cf < 1:
        raise BadDomainError(f"c must be >= 1, got {c}")
    if k < 3:
        # the gap below the sharp constant is empty for k = 2
        raise CNotBelowCkError(f"no witness family exists for k={k} at c >= 1",
                               enclosure=ck_enclosure(2, _ENC_WIDTH))
    enc = _certify_c_below_ck(k, cf)
    root2 = four_cos_sq_enclosure(2, k + 1, _ENC_WIDTH)
    mid_gap = (root2.hi + enc.lo) / 2
    c_prime = max(cf, mid_gap)
    phi = math.acos(math.sqrt(float(c_prime)) / 2.0)
    safety = Fraction(1, 2)
    for _ in range(max_halvings):
        eps = epsilon_cascade(k, phi, safety)
        t = toeplitz_tn(k, phi, eps)
        value, sc = det_float(t, tol)
        if sc.verdict is Sign.NEGATIVE:
            member = is_member(t, cf, strict=False, tol=tol)
            report = critical_ratio(t)
            return _emit(WitnessResult(
                matrix=t, c_target=cf, family="toeplitz", membership=member,
                critical_ratio=report.critical_ratio, det=value, det_sign=sc,
                exact=False,
                params={"phi": phi, "c_prime": format_scalar(c_prime),
                        "safety": format_scalar(safety), "epsilons": eps,
                        "monotonicity": f"class at {format_scalar(c_prime)} is contained in "
                                        f"class at {format_scalar(cf)}"},
            ), tol)
        safety = safety / 2
    raise NoConvergenceError(
        f"determinant not certified negative after {max_halvings} cascade halvings")


def hankel_dn(n: int, p, q) -> Matrix:
    """Hankel family with entries p^(floor(t/2)floor((t+1)/2)) q^(floor((t-1)/2)floor(t/2)).

    Along antidiagonal t = i+j-2 the first entries read 1, 1, p, p^2 q,
    p^4 q^2, ...; the critical ratio is min(p, q).
    """
    if n < 1:
        raise BadDomainError(f"n must be >= 1, got {n}")
    pp, qq = as_scalar(p), as_scalar(q)
    if pp < 1 or qq < 1:
        raise BadDomainError(f"need p, q >= 1, got p={p}, q={q}")
    seq = [pp ** ((t // 2) * ((t + 1) // 2)) * qq ** (((t - 1) // 2) * (t // 2))
           for t in range(2 * n - 1)]
    return hankel_from(seq, n)


def lemma4_exponents(n: int) -> tuple[int, int]:
    """Leading q-degree and p-exponent of the Hankel determinant expansion."""
    if n < 3:
        raise BadDomainError(f"n must be >= 3, got {n}")
    alpha = n * (n - 1) * (n - 2) // 3
    beta = n * (n - 1) * (2 * n - 1) // 6
    return alpha, beta


def newton_interpolation(xs: list[Fraction], ys: list[Fraction]) -> list[Fraction]:
    """Exact interpolating polynomial through (xs, ys); coefficients ascending."""
    pts = len(xs)
    coeffs = list(ys)
    for level in range(1, pts):
        for i in range(pts - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form to the monomial basis
    poly = [Fraction(0)] * pts
    acc = [Fraction(1)]  # product (x - x_0)...(x - x_{level-1})
    for level in range(pts):
        for d, a in enumerate(acc):
            poly[d] += coeffs[level] * a
        nxt = [Fraction(0)] * (len(acc) + 1)
        for d, a in enumerate(acc):
            nxt[d] -= a * xs[level]
            nxt[d + 1] += a
        acc = nxt
    return poly


@dataclass(frozen=True)
class Lemma4Report:
    n: int
    p: Fraction
    alpha: int
    beta: int
    f_n_p: Fraction
    leading_target: Fraction
    leading_found: Fraction
    residual_degree: int
    residuals: tuple  # (q, det, residual) triples
    ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n, "p": format_scalar(self.p),
            "alpha": self.alpha, "beta": self.beta,
            "f_n_p": format_scalar(self.f_n_p),
            "leading_target": format_scalar(self.leading_target),
            "leading_found": format_scalar(self.leading_found),
            "residual_degree": self.residual_degree,
            "residuals": [[format_scalar(q), format_scalar(d), format_scalar(r)]
                          for q, d, r in self.residuals],
            "ok": self.ok,
        }


def lemma4_leading_check(n: int, p, q_values) -> Lemma4Report:
    """Verify det of the Hankel family splits as p^beta q^alpha F_n(p) + lower.

    Exact interpolation through the supplied q-points must leave a zero
    degree-alpha coefficient in the residual R(q) = det - p^beta q^alpha
    F_n(p), i.e. the residual has q-degree at most alpha - 1.
    """
    from .errors import NeedMorePointsError

    alpha, beta = lemma4_exponents(n)
    pf = as_fraction(p)
    if pf < 1:
        raise BadDomainError(f"p must be >= 1, got {p}")
    qs = [as_fraction(q) for q in q_values]
    if any(q < 1 for q in qs):
        raise BadDomainError("q values must be >= 1")
    if any(a >= b for a, b in zip(qs, qs[1:])):
        raise BadDomainError("q values must be strictly increasing")
    if len(qs) < alpha + 1:
        raise NeedMorePointsError(f"need at least {alpha + 1} q points, got {len(qs)}")
    f_n_p = f_closed(n, pf)
    target = pf ** beta * f_n_p
    residuals = []
    ys = []
    for q in qs:
        d = det_exact(hankel_dn(n, pf, q))
        r = d - target * q ** alpha
        residuals.append((q, d, r))
        ys.append(r)
    poly = newton_interpolation(qs, ys)
    residual_degree = max((i for i, cf in enumerate(poly) if cf != 0), default=-1)
    leading_found = target + (poly[alpha] if alpha < len(poly) else Fraction(0))
    coeff_alpha_zero = alpha >= len(poly) or poly[alpha] == 0
    ok = coeff_alpha_zero and residual_degree <= alpha - 1
    return Lemma4Report(n, pf, alpha, beta, f_n_p, target, leading_found,
                        residual_degree, tuple(residuals), ok)


def _first_power_of_two_at_least(x: Fraction) -> Fraction:
    q = Fraction(2)
    while q < x:
        q *= 2
    return q


def hankel_witness(k: int, c, max_doublings: int = 64,
                   tol: float = DEFAULT_TOL) -> WitnessResult:
    """Hankel matrix in the ratio class at c (< order-k constant) with det < 0.

    Picks the simplest rational p0 in the certified interval between
    max(c, second root) and the sharp constant (where F_k < 0, verified
    exactly), then doubles q through powers of two until the exact
    determinant goes negative. Fully exact certification.
    """
    cf = as_fraction(c)
    if cf < 1:
        raise BadDomainError(f"c must be >= 1, got {c}")
    if k < 3:
        raise CNotBelowCkError(f"no witness family exists for k={k} at c >= 1",
                               enclosure=ck_enclosure(max(k, 2), _ENC_WIDTH))
    enc = _certify_c_below_ck(k, cf)
    root2 = four_cos_sq_enclosure(2, k + 1, _ENC_WIDTH)
    lo_b = max(cf, root2.hi)
    hi_b = enc.lo
    p0 = simplest_between(lo_b, hi_b)
    f_k_p0 = f_closed(k, p0)
    if not f_k_p0 < 0:
        raise OracleMismatchError(
            f"F_{k}({format_scalar(p0)}) = {format_scalar(f_k_p0)} is not negative")
    q = _first_power_of_two_at_least(max(2 * p0, Fraction(2)))
    trail = []
    for _ in range(max_doublings):
        mat = hankel_dn(k, p0, q)
        d = det_exact(mat)
        trail.append((q, d))
        if d < 0:
            member = is_member(mat, cf, strict=False)
            report = critical_ratio(mat)
            return _emit(WitnessResult(
                matrix=mat, c_target=cf, family="hankel", membership=member,
                critical_ratio=report.critical_ratio, det=d, det_sign=sign_exact(d),
                exact=True,
                params={"p": format_scalar(p0), "q": format_scalar(q),
                        "f_k_p": format_scalar(f_k_p0),
                        "q_trail": [[format_scalar(qq), format_scalar(dd)]
                                    for qq, dd in trail],
                        "monotonicity": f"class at {format_scalar(p0)} is contained in "
                                        f"class at {format_scalar(cf)}"},
            ), tol)
        q *= 2
    raise NoConvergenceError(
        f"determinant still nonnegative after {max_doublings} q-doublings")
