from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homcalc import linalg

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return linalg.matrix(rows)


def test_q_and_qstr():
    assert linalg.q("3/6") == Fraction(1, 2)
    assert linalg.q(-2) == Fraction(-2)
    assert linalg.qstr(Fraction(4, 2)) == "2"
    assert linalg.qstr(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        linalg.q(0.5)


def test_entries_stay_exact():
    m = linalg.matrix([["1/3", "2"], ["0", "-5/7"]])
    assert all(isinstance(x, Fraction) for x in m.flat)
    assert linalg.rank(m) == 2


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(ker) == m.shape[1]
    for v in ker:
        assert linalg.is_zero(m.dot(v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_roundtrip(m, x):
    x = linalg.vector(x[:m.shape[1]])
    b = m.dot(x)
    v = linalg.solve(m, b)
    assert v is not None and list(m.dot(v)) == list(b)


def test_solve_inconsistent():
    m = linalg.matrix([[1, 1], [2, 2]])
    assert linalg.solve(m, linalg.vector([1, 3])) is None


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    r, piv = linalg.rref(m)
    r2, piv2 = linalg.rref(r)
    assert piv == piv2
    assert (r == r2).all()


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=6))
def test_reducer_coordinates(m):
    cols = [m[:, j] for j in linalg.independent_subset([m[:, j] for j in range(m.shape[1])],
                                                       m.shape[0])]
    red = linalg.Reducer(cols, m.shape[0])
    for j in range(m.shape[1]):
        c = red.coords(m[:, j])
        assert c is not None
        assert list(linalg.column_matrix(cols, m.shape[0]).dot(c)) == list(m[:, j])


def test_reducer_rejects_dependent_columns():
    with pytest.raises(ValueError):
        linalg.Reducer([linalg.vector([1, 0]), linalg.vector([2, 0])], 2)


def test_quotient_representatives():
    e = [linalg._unit(3, j) for j in range(3)]
    sub = [e[0] + e[1]]
    reps = linalg.quotient_representatives(sub, e, 3)
    assert len(reps) == 2
    assert linalg.rank(linalg.column_matrix(sub + reps, 3)) == 3
    with pytest.raises(ValueError):
        linalg.quotient_representatives([e[2]], e[:2], 3)


@pytest.mark.parametrize("contract", [0, 1])
def test_act_on_axis_diagonal_fast_path(contract):
    rng = np.random.default_rng(0)
    t = np.empty((2, 2, 2), dtype=object)
    t.flat[:] = [Fraction(int(x)) for x in rng.integers(-3, 4, 8)]
    d = linalg.matrix([[2, 0], [0, "1/2"]])
    for axis in range(3):
        fast = linalg.act_on_axis(t, d, axis, contract)
        slow = np.moveaxis(np.tensordot(t, d, axes=([axis], [contract])), -1, axis)
        assert (fast == slow).all()


def test_tensor_json():
    t = linalg.zeros(2, 1)
    t[1, 0] = Fraction(-3, 4)
    assert linalg.tensor_json(t) == [["0"], ["-3/4"]]
