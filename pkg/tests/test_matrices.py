from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totalpos.errors import (
    IndexOutOfRangeError,
    NotStrictlyIncreasingError,
    ParseError,
    SelectorShapeError,
    TooShortError,
)
from totalpos.matrices import (
    BandProfile,
    Matrix,
    SubmatrixSelector,
    band_profile,
    hankel_from,
    matrix_to_csv,
    matrix_to_json_dict,
    parse_matrix,
    parse_matrix_csv,
    parse_matrix_json,
    submatrix,
    toeplitz_from,
)


def test_at_is_one_based():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    assert m.at(1, 1) == 1 and m.at(2, 1) == 3 and m.at(1, 2) == 2
    with pytest.raises(IndexOutOfRangeError):
        m.at(0, 1)
    with pytest.raises(IndexOutOfRangeError):
        m.at(1, 3)


def test_submatrix_trailing_block():
    m = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    sub = submatrix(m, SubmatrixSelector((2, 3), (2, 3)))
    assert sub.to_rows() == [[5, 6], [8, 9]]


def test_submatrix_identity_selection():
    m = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert submatrix(m, SubmatrixSelector((1, 2, 3), (1, 2, 3))) == m


def test_submatrix_of_hankel_family():
    p, q = Fraction(3, 2), Fraction(3)
    d3 = hankel_from([1, 1, p, p ** 2 * q, p ** 4 * q ** 2], 3)
    sub = submatrix(d3, SubmatrixSelector((2, 3), (1, 2)))
    assert sub.to_rows() == [[1, p], [p, p ** 2 * q]]


def test_selector_validation():
    with pytest.raises(NotStrictlyIncreasingError):
        SubmatrixSelector((2, 2), (1, 2))
    with pytest.raises(SelectorShapeError):
        SubmatrixSelector((1, 2), (1,))
    with pytest.raises(IndexOutOfRangeError):
        SubmatrixSelector((0, 1), (1, 2))
    m = Matrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(IndexOutOfRangeError):
        submatrix(m, SubmatrixSelector((1, 3), (1, 2)))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_submatrix_composition(data):
    n = 5
    m = Matrix.from_rows([[i * n + j for j in range(1, n + 1)] for i in range(n)])
    outer_rows = tuple(sorted(data.draw(
        st.sets(st.integers(1, n), min_size=2, max_size=n))))
    outer_cols = tuple(sorted(data.draw(
        st.sets(st.integers(1, n), min_size=len(outer_rows), max_size=len(outer_rows)))))
    k = len(outer_rows)
    inner_rows = tuple(sorted(data.draw(
        st.sets(st.integers(1, k), min_size=1, max_size=k))))
    inner_cols = tuple(sorted(data.draw(
        st.sets(st.integers(1, k), min_size=len(inner_rows), max_size=len(inner_rows)))))
    once = submatrix(submatrix(m, SubmatrixSelector(outer_rows, outer_cols)),
                     SubmatrixSelector(inner_rows, inner_cols))
    composed = submatrix(m, SubmatrixSelector(
        tuple(outer_rows[i - 1] for i in inner_rows),
        tuple(outer_cols[j - 1] for j in inner_cols)))
    assert once == composed


def test_toeplitz_from_layout():
    m = toeplitz_from({-1: 1, 0: 7, 1: 1}, 3)
    assert m.to_rows() == [[7, 1, 0], [1, 7, 1], [0, 1, 7]]


def test_toeplitz_from_identity():
    assert toeplitz_from({0: 1}, 4) == Matrix.from_rows(
        [[int(i == j) for j in range(4)] for i in range(4)])


def test_toeplitz_from_upper_triangular_truncation():
    m = toeplitz_from({0: 1, 1: 2, 2: 3}, 3)
    assert m.to_rows() == [[1, 2, 3], [0, 1, 2], [0, 0, 1]]


def test_toeplitz_offsets_read_back():
    vals = {-2: Fraction(5), 0: Fraction(1, 3), 1: Fraction(2)}
    m = toeplitz_from(vals, 4)
    for off, v in vals.items():
        cells = [(i, i + off) for i in range(1, 5) if 1 <= i + off <= 4]
        assert all(m.at(i, j) == v for i, j in cells)


def test_hankel_from_moment_layout():
    m = hankel_from([1, 2, 3, 4, 5], 3)
    assert m.to_rows() == [[1, 2, 3], [2, 3, 4], [3, 4, 5]]


def test_hankel_from_all_ones():
    m = hankel_from([1] * 5, 3)
    assert all(x == 1 for x in m.entries)


def test_hankel_symmetry():
    m = hankel_from([Fraction(i, 7) for i in range(1, 10)], 5)
    for i in range(1, 6):
        for j in range(1, 6):
            assert m.at(i, j) == m.at(j, i)


def test_hankel_too_short():
    with pytest.raises(TooShortError):
        hankel_from([1, 2, 3], 3)


# ---------------------------------------------------------------------------
# band detection
# ---------------------------------------------------------------------------

def test_band_profile_tridiagonal():
    m = toeplitz_from({-1: 1, 0: 2, 1: 1}, 4)
    assert band_profile(m) == BandProfile(-1, 1)


def test_band_profile_full_positive():
    m = Matrix.from_rows([[1] * 4 for _ in range(4)])
    assert band_profile(m) == BandProfile(-3, 3)


def test_band_profile_interior_zero_rejected():
    m = Matrix.from_rows([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert band_profile(m) is None


def test_band_profile_negative_entry_rejected():
    m = Matrix.from_rows([[1, -1], [1, 1]])
    assert band_profile(m) is None


def test_band_profile_zero_matrix():
    assert band_profile(Matrix.from_rows([[0, 0], [0, 0]])) is None


def test_band_profile_single_diagonal():
    m = Matrix.from_rows([[2, 0], [0, 3]])
    assert band_profile(m) == BandProfile(0, 0)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_csv_round_trip_exact():
    m = Matrix.from_rows([[Fraction(1, 3), 2], [Fraction(-5), Fraction(7, 2)]])
    rep = parse_matrix_csv(matrix_to_csv(m))
    assert rep.matrix == m and not rep.promoted


def test_csv_round_trip_float():
    m = Matrix.from_rows([[0.5, 1.25], [2.0, -3.75]])
    rep = parse_matrix_csv(matrix_to_csv(m))
    assert rep.matrix == m


def test_csv_mixed_promotes_with_warning():
    rep = parse_matrix_csv("1,2.5\n3,4\n")
    assert rep.promoted
    assert rep.warnings
    assert all(isinstance(x, float) for x in rep.matrix.entries)


def test_csv_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_matrix_csv("1,2\n3,oops\n")
    assert err.value.line == 2 and err.value.col == 2


def test_csv_ragged_rows_rejected():
    with pytest.raises(ParseError):
        parse_matrix_csv("1,2\n3\n")


def test_json_round_trip():
    m = Matrix.from_rows([[Fraction(1, 3), Fraction(2)], [Fraction(3), Fraction(4, 7)]])
    obj = matrix_to_json_dict(m)
    assert obj["rows"] == 2 and obj["entries"][0][0] == "1/3"
    import json
    rep = parse_matrix_json(json.dumps(obj))
    assert rep.matrix == m


def test_parse_matrix_sniffs_json_and_csv():
    assert parse_matrix('{"rows":1,"cols":2,"entries":[["1","2"]]}').matrix == \
        Matrix.from_rows([[1, 2]])
    assert parse_matrix("1,2\n").matrix == Matrix.from_rows([[1, 2]])


def test_json_shape_mismatch_rejected():
    with pytest.raises(ParseError):
        parse_matrix_json('{"rows":2,"cols":2,"entries":[["1","2"]]}')
