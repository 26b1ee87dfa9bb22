import itertools
from fractions import Fraction

import pytest

from totalpos.errors import (
    BadDomainError,
    FactorBelowCError,
    InconsistentCornerError,
    NonPositiveEntryError,
    TooSmallError,
)
from totalpos.matrices import Matrix, SubmatrixSelector, submatrix
from totalpos.numerics import RationalInterval, ck_enclosure
from totalpos.ratio import (
    Membership,
    critical_ratio,
    generate_tp2c,
    is_member,
    lemma_a_margin,
)


def test_critical_ratio_single_window():
    rep = critical_ratio(Matrix.from_rows([[2, 1], [1, 2]]))
    assert rep.critical_ratio == 4
    assert rep.argmin_cell == (1, 1)


def test_critical_ratio_all_windows_equal():
    m = Matrix.from_rows([[1, 1, 1], [1, 2, 4], [1, 4, 16]])
    # direct enumeration oracle over the four adjacent windows
    ratios = [(m.at(i, j) * m.at(i + 1, j + 1)) / (m.at(i, j + 1) * m.at(i + 1, j))
              for i in (1, 2) for j in (1, 2)]
    assert ratios == [2, 2, 2, 2]
    rep = critical_ratio(m)
    assert rep.critical_ratio == 2 and rep.argmin_cell == (1, 1)


def test_critical_ratio_all_ones():
    assert critical_ratio(Matrix.from_rows([[1, 1], [1, 1]])).critical_ratio == 1


def test_critical_ratio_rejects_zero_entry():
    with pytest.raises(NonPositiveEntryError) as err:
        critical_ratio(Matrix.from_rows([[1, 0], [1, 1]]))
    assert err.value.cell == (1, 2)


def test_critical_ratio_too_small():
    with pytest.raises(TooSmallError):
        critical_ratio(Matrix.from_rows([[1, 2, 3]]))


def test_is_member_examples():
    two = Matrix.from_rows([[2, 1], [1, 2]])
    ones = Matrix.from_rows([[1, 1], [1, 1]])
    assert is_member(two, 1, strict=True) is Membership.YES
    assert is_member(ones, 1, strict=True) is Membership.NO
    assert is_member(ones, 1, strict=False) is Membership.YES
    m = Matrix.from_rows([[1, 1, 1], [1, 2, 4], [1, 4, 16]])
    assert is_member(m, ck_enclosure(4), strict=False) is Membership.NO


def test_is_member_uncertain_when_ratio_inside_enclosure():
    m = Matrix.from_rows([[1, 1], [1, Fraction(2618034, 1000000)]])
    wide = RationalInterval(Fraction(2), Fraction(3))
    assert is_member(m, wide, strict=False) is Membership.UNCERTAIN


def test_lemma_a_margin_tight_cases():
    c = Fraction(2)
    m = Matrix.from_rows([[c ** ((i - 1) * (j - 1)) for j in (1, 2, 3)] for i in (1, 2, 3)])
    assert m.at(3, 3) == 16
    assert lemma_a_margin(m, c, (1, 3, 1, 3)) == 0
    m4 = Matrix.from_rows([[1, 1, 1], [1, 4, 16], [1, 16, 256]])
    assert lemma_a_margin(m4, 4, (1, 3, 1, 3)) == 0


def test_lemma_a_margin_distance_one_is_window_condition():
    m = Matrix.from_rows([[2, 1], [1, 2]])
    # margin = a11 a22 - c a12 a21
    assert lemma_a_margin(m, 3, (1, 2, 1, 2)) == 4 - 3


def test_lemma_a_margin_validation():
    m = Matrix.from_rows([[1, 1], [1, 1]])
    with pytest.raises(BadDomainError):
        lemma_a_margin(m, 2, (2, 1, 1, 2))
    from totalpos.errors import IndexOutOfRangeError
    with pytest.raises(IndexOutOfRangeError):
        lemma_a_margin(m, 2, (1, 3, 1, 2))


def test_lemma_a_margin_nonnegative_exhaustively(rng):
    for k, c in ((4, Fraction(3)), (5, Fraction(2)), (6, Fraction(7, 2))):
        m = generate_tp2c(k, c, seed=rng.randint(0, 10 ** 6))
        assert critical_ratio(m).critical_ratio >= c
        for i, kk in itertools.combinations(range(1, k + 1), 2):
            for j, ll in itertools.combinations(range(1, k + 1), 2):
                assert lemma_a_margin(m, c, (i, kk, j, ll)) >= 0


def test_submatrix_inherits_membership(rng):
    c = Fraction(5, 2)
    for trial in range(6):
        m = generate_tp2c(5, c, seed=trial)
        idx = range(1, 6)
        for size in (2, 3, 4):
            for rows in itertools.combinations(idx, size):
                for cols in itertools.combinations(idx, size):
                    sub = submatrix(m, SubmatrixSelector(rows, cols))
                    assert critical_ratio(sub).critical_ratio >= c


# ---------------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------------

def test_generate_unrolled_example():
    m = generate_tp2c(3, 4, factors=4)
    assert m.to_rows() == [[1, 1, 1], [1, 4, 16], [1, 16, 256]]


def test_generate_2x2_single_factor():
    m = generate_tp2c(2, 1, factors=Fraction(7, 2))
    assert m.to_rows() == [[1, 1], [1, Fraction(7, 2)]]


def test_generate_membership_property():
    c = Fraction(3, 2)
    for seed in range(100):
        m = generate_tp2c(4, c, seed=seed)
        assert is_member(m, c, strict=False) is Membership.YES


def test_generate_critical_ratio_equals_min_factor():
    factors = {(1, 1): Fraction(5), (1, 2): Fraction(9, 2), (2, 1): Fraction(4),
               (2, 2): Fraction(13, 3)}
    m = generate_tp2c(3, 4, factors=factors)
    assert critical_ratio(m).critical_ratio == min(factors.values())


def test_generate_strict_draws_exceed_c():
    c = Fraction(2)
    m = generate_tp2c(4, c, seed=11, strict=True)
    assert critical_ratio(m).critical_ratio > c


def test_generate_rejects_bad_inputs():
    with pytest.raises(FactorBelowCError):
        generate_tp2c(3, 4, factors=Fraction(7, 2))
    with pytest.raises(InconsistentCornerError):
        generate_tp2c(2, 1, first_row=[1, 1], first_col=[2, 1])
    with pytest.raises(BadDomainError):
        generate_tp2c(3, Fraction(1, 2))
    with pytest.raises(NonPositiveEntryError):
        generate_tp2c(2, 1, first_row=[0, 1], first_col=[0, 1])


def test_generate_deterministic_per_seed():
    a = generate_tp2c(5, 2, seed=42)
    b = generate_tp2c(5, 2, seed=42)
    c = generate_tp2c(5, 2, seed=43)
    assert a == b and a != c
