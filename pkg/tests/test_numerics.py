import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totalpos.errors import (
    BadDomainError,
    BadWidthError,
    NonExactEntryError,
    NonSquareError,
)
from totalpos.numerics import (
    RationalInterval,
    Sign,
    ck_enclosure,
    constant_c_tilde,
    constant_d,
    det_exact,
    det_float,
    format_scalar,
    four_cos_sq_enclosure,
    parse_scalar,
    sign_exact,
    simplest_between,
)

from conftest import cofactor_det, random_rational_matrix


# ---------------------------------------------------------------------------
# det_exact
# ---------------------------------------------------------------------------

def test_det_exact_2x2():
    assert det_exact([[1, 1], [1, 4]]) == 3


def test_det_exact_3x3_matches_cofactor_oracle():
    rows = [[Fraction(1), Fraction(1), Fraction(1)],
            [Fraction(1), Fraction(4), Fraction(16)],
            [Fraction(1), Fraction(16), Fraction(256)]]
    assert cofactor_det(rows) == 540  # frozen from the oracle
    assert det_exact(rows) == 540


def test_det_exact_identity():
    ident = [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
    assert det_exact(ident) == 1


def test_det_exact_rejects_non_square():
    with pytest.raises(NonSquareError):
        det_exact([[1, 2, 3], [4, 5, 6]])


def test_det_exact_rejects_floats():
    with pytest.raises(NonExactEntryError):
        det_exact([[1.0, 2], [3, 4]])


def test_det_exact_zero_column():
    assert det_exact([[0, 1], [0, 2]]) == 0


def test_det_exact_needs_pivot_swap():
    rows = [[0, 1, 2], [3, 4, 5], [6, 7, 9]]
    frows = [[Fraction(x) for x in r] for r in rows]
    assert det_exact(rows) == cofactor_det(frows)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_det_exact_agrees_with_cofactor_on_random_4x4(seed):
    rng = random.Random(seed)
    rows = random_rational_matrix(rng, 4)
    assert det_exact(rows) == cofactor_det(rows)


# ---------------------------------------------------------------------------
# det_float
# ---------------------------------------------------------------------------

def test_det_float_positive():
    value, sc = det_float([[2, 1], [1, 2]])
    assert abs(value - 3.0) < 1e-12
    assert sc.verdict is Sign.POSITIVE


def test_det_float_vanishing_tridiagonal():
    d = math.sqrt(2.0)  # 2cos(pi/4); true determinant sin(pi)/sin(pi/4) = 0
    rows = [[d, 1, 0], [1, d, 1], [0, 1, d]]
    value, sc = det_float(rows)
    assert sc.verdict in (Sign.ZERO, Sign.UNCERTAIN)
    assert abs(value) < 1e-12


def test_det_float_negative_tridiagonal():
    d = 2.0 * math.cos(0.9)
    rows = [[d, 1, 0], [1, d, 1], [0, 1, d]]
    value, sc = det_float(rows)
    expected = math.sin(3.6) / math.sin(0.9)
    assert abs(value - expected) < 1e-10
    assert abs(value - (-0.5649)) < 1e-4
    assert sc.verdict is Sign.NEGATIVE


def test_det_float_zero_row_is_zero_verdict():
    value, sc = det_float([[0.0, 0.0], [1.0, 2.0]])
    assert value == 0.0
    assert sc.verdict is Sign.ZERO


def test_det_float_never_contradicts_det_exact(rng):
    for _ in range(120):
        n = rng.randint(2, 4)
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        exact = det_exact(rows)
        _, sc = det_float(rows)
        if exact > 0:
            assert sc.verdict in (Sign.POSITIVE, Sign.UNCERTAIN, Sign.ZERO) \
                and sc.verdict is not Sign.NEGATIVE
        elif exact < 0:
            assert sc.verdict is not Sign.POSITIVE or sc.verdict is Sign.UNCERTAIN
            assert sc.verdict in (Sign.NEGATIVE, Sign.UNCERTAIN, Sign.ZERO)


# ---------------------------------------------------------------------------
# ck enclosures
# ---------------------------------------------------------------------------

def test_ck_rational_cases_are_degenerate():
    assert ck_enclosure(2).lo == ck_enclosure(2).hi == 1
    assert ck_enclosure(3).lo == ck_enclosure(3).hi == 2
    assert ck_enclosure(5).lo == ck_enclosure(5).hi == 3


def test_ck4_encloses_golden_value():
    enc = ck_enclosure(4, Fraction(1, 10 ** 12))
    assert enc.width <= Fraction(1, 10 ** 12)
    # (3 + sqrt(5))/2 = 2.6180339887498949...
    assert enc.lo <= Fraction("2.618033988749894") <= enc.hi or \
        enc.contains(Fraction("2.6180339887498949"))


def test_ck_midpoints_increasing_and_bounded():
    mids = [ck_enclosure(k, Fraction(1, 10 ** 12)).mid for k in range(2, 21)]
    assert all(a < b for a, b in zip(mids, mids[1:]))
    for k, enc in ((k, ck_enclosure(k, Fraction(1, 10 ** 12))) for k in range(2, 21)):
        assert enc.lo >= 1 and enc.hi < 4


def test_ck_bad_inputs():
    with pytest.raises(BadWidthError):
        ck_enclosure(4, 0)
    with pytest.raises(BadDomainError):
        ck_enclosure(1)


def test_four_cos_sq_rational_detection():
    assert four_cos_sq_enclosure(2, 4, Fraction(1, 10)).lo == 0  # angle pi/2
    assert four_cos_sq_enclosure(2, 6, Fraction(1, 10)).lo == 1  # angle pi/3
    assert four_cos_sq_enclosure(2, 12, Fraction(1, 10)).lo == 3  # angle pi/6


# ---------------------------------------------------------------------------
# c_tilde and d
# ---------------------------------------------------------------------------

def _cubic(x: Fraction) -> Fraction:
    return x ** 3 - 5 * x ** 2 + 4 * x - 1


def test_c_tilde_contains_published_value():
    enc = constant_c_tilde(Fraction(1, 1000))
    assert enc.width <= Fraction(1, 1000)
    assert abs(enc.mid - Fraction("4.0796")) < Fraction(1, 1000)
    assert enc.lo > 4


def test_c_tilde_endpoint_signs():
    enc = constant_c_tilde(Fraction(1, 10 ** 6))
    assert _cubic(enc.lo) * _cubic(enc.hi) < 0


def test_c_tilde_refinement_is_nested():
    coarse = constant_c_tilde(Fraction(1, 1000))
    fine = constant_c_tilde(Fraction(1, 10 ** 10))
    assert coarse.encloses(fine)


def test_c_tilde_bad_width():
    with pytest.raises(BadWidthError):
        constant_c_tilde(-1)


def test_d_contains_published_value():
    enc = constant_d(Fraction(1, 100))
    assert enc.width <= Fraction(1, 100)
    assert enc.contains(Fraction("4.06"))
    assert enc.lo > 4


def test_d_defining_sum_straddles_quarter():
    enc = constant_d(Fraction(1, 10 ** 4))

    def partial(dd: Fraction, terms: int) -> Fraction:
        return sum((dd ** -(n * n) for n in range(1, terms + 1)), Fraction(0))

    # monotone decreasing in d: lower endpoint oversums, upper undersums
    assert partial(enc.lo, 8) > Fraction(1, 4)
    tail = enc.hi ** -81 * enc.hi / (enc.hi - 1)
    assert partial(enc.hi, 8) + tail < Fraction(1, 4)


def test_d_refinement_is_nested():
    assert constant_d(Fraction(1, 100)).encloses(constant_d(Fraction(1, 10 ** 8)))


def test_d_bad_width():
    with pytest.raises(BadWidthError):
        constant_d(Fraction(0))


# ---------------------------------------------------------------------------
# interval arithmetic and helpers
# ---------------------------------------------------------------------------

def test_interval_arithmetic_soundness():
    a = RationalInterval(Fraction(1, 2), Fraction(3, 4))
    b = RationalInterval(Fraction(-2), Fraction(3))
    assert (a + b).contains(Fraction(1, 2) + Fraction(3))
    assert (a - b).contains(Fraction(3, 4) + 2)
    assert (a * b).contains(Fraction(-3, 2))
    assert (1 / a).contains(Fraction(2))
    assert b.square().lo == 0 and b.square().hi == 9
    assert (a ** 3).contains(Fraction(1, 8))


def test_interval_reciprocal_through_zero_rejected():
    with pytest.raises(BadDomainError):
        RationalInterval(Fraction(-1), Fraction(1)).reciprocal()


def test_interval_serialization():
    enc = RationalInterval(Fraction(1, 3), Fraction(2, 3))
    assert enc.to_json() == {"lo": "1/3", "hi": "2/3"}


def test_scalar_parse_and_format_round_trip():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("-7") == Fraction(-7)
    assert parse_scalar("2.5") == 2.5
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert format_scalar(Fraction(540)) == "540"
    assert format_scalar(0.5) == "0.5"
    with pytest.raises(ValueError):
        parse_scalar("abc")


def test_sign_exact_never_uncertain():
    for v in (Fraction(-2), Fraction(0), Fraction(5, 7)):
        assert sign_exact(v).verdict in (Sign.NEGATIVE, Sign.ZERO, Sign.POSITIVE)


def test_simplest_between():
    assert simplest_between(Fraction(7, 5), Fraction(2)) == Fraction(3, 2)
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(-1), Fraction(1)) == 0
    assert simplest_between(Fraction(199, 100), Fraction(2)) == Fraction(201, 101)
    v = simplest_between(Fraction(5, 2), Fraction("2.618"))
    assert Fraction(5, 2) < v < Fraction("2.618")
