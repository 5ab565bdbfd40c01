from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mldlab.simplex import UnboundedLP, maximize
from oracles import lp_vertex_oracle


def test_textbook_problem():
    # max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    opt, y = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert opt == 36
    assert y == [2, 6]


def test_unbounded():
    with pytest.raises(UnboundedLP):
        maximize([1, 1], [[1, -1]], [1])


def test_rejects_negative_rhs():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_does_not_cycle():
    # A classic cycling example for the largest-coefficient rule.
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
         [Fraction(1, 2), -90, Fraction(-1, 50), 3],
         [0, 0, 1, 0]]
    opt, _ = maximize(c, A, [0, 0, 1])
    assert opt == Fraction(1, 20)


small = st.integers(min_value=0, max_value=6)


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    A = [[draw(small) for _ in range(n)] for _ in range(m)]
    # one row with all-positive entries keeps the feasible region bounded
    A.append([draw(st.integers(1, 5)) for _ in range(n)])
    b = [draw(small) for _ in range(m + 1)]
    c = [draw(st.integers(-4, 6)) for _ in range(n)]
    return c, A, b


@settings(max_examples=150, deadline=None)
@given(bounded_lps())
def test_matches_vertex_enumeration(lp):
    c, A, b = lp
    opt, y = maximize(c, A, b)
    assert opt == lp_vertex_oracle(c, A, b)
    assert all(v >= 0 for v in y)
    for row, rhs in zip(A, b):
        assert sum(a * v for a, v in zip(row, y)) <= rhs
    assert sum(ci * v for ci, v in zip(c, y)) == opt
