"""Exact and floating determinants and linear solves."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bimop import Matrix, NotSquare, Singular, det, format_scalar, parse_scalar, solve


def cofactor_det(m):
    """Reference determinant by cofactor expansion; shares no code with det."""
    n = m.rows
    if n == 0:
        return F(1)
    if n == 1:
        return m.data[0][0]
    total = F(0)
    for j in range(n):
        minor = Matrix.from_rows([row[:j] + row[j + 1:] for row in m.data[1:]])
        sign = F(-1) ** j
        total += sign * m.data[0][j] * cofactor_det(minor)
    return total


def test_det_identity():
    assert det(Matrix.identity(3)) == 1


def test_det_rank_deficient():
    m = Matrix.from_rows([[F(1), F(2)], [F(2), F(4)]])
    assert det(m) == 0


def test_det_hankel_laguerre():
    # relative moments of x e^{-x}: 1, 2, 6
    m = Matrix.from_rows([[F(1), F(2)], [F(2), F(6)]])
    assert det(m) == 2


def test_det_zero_by_zero_is_one():
    assert det(Matrix(0, 0, [])) == 1


def test_det_requires_square():
    with pytest.raises(NotSquare):
        det(Matrix.from_rows([[F(1), F(2)]]))


fractions = st.builds(F, st.integers(min_value=-9, max_value=9),
                      st.integers(min_value=1, max_value=9))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_det_matches_cofactor_expansion(rows):
    m = Matrix.from_rows(rows)
    assert det(m) == cofactor_det(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(fractions, min_size=n, max_size=n))))
def test_solve_satisfies_system(case):
    rows, rhs = case
    m = Matrix.from_rows(rows)
    if det(m) == 0:
        with pytest.raises(Singular):
            solve(m, rhs)
        return
    x = solve(m, rhs)
    assert m.matvec(x) == list(rhs)


def test_solve_singular_carries_zero_det():
    m = Matrix.from_rows([[F(1), F(1)], [F(1), F(1)]])
    with pytest.raises(Singular) as err:
        solve(m, [F(1), F(2)])
    assert err.value.det == 0


def test_float_det_and_solve():
    m = Matrix.from_rows([[2.0, 0.0], [0.0, 3.0]])
    assert det(m) == pytest.approx(6.0)
    x = solve(m, [4.0, 9.0])
    assert x == pytest.approx([2.0, 3.0])


def test_float_singular_detection():
    m = Matrix.from_rows([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(Singular):
        solve(m, [1.0, 1.0])


def test_transpose_matvec():
    m = Matrix.from_rows([[F(1), F(2)], [F(3), F(4)]])
    assert m.transpose().data == [[F(1), F(3)], [F(2), F(4)]]
    assert m.matvec([F(1), F(1)]) == [F(3), F(7)]


def test_format_scalar():
    assert format_scalar(F(3, 2)) == "3/2"
    assert format_scalar(F(4)) == "4"
    assert format_scalar(0.5) == 0.5


def test_parse_scalar_decimal_exact():
    assert parse_scalar("2.2") == F(11, 5)
    assert parse_scalar("-3/4") == F(-3, 4)
    assert parse_scalar(7) == F(7)
