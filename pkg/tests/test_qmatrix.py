from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relbgg.qmatrix import Echelon, QMatrix, coordinates, fmt_rational, span_basis

import oracles

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(matrices())
def test_rank_nullity(rows):
    m = QMatrix.from_dense(rows)
    null = m.nullspace()
    assert m.rank() + len(null) == m.ncols
    for v in null:
        assert not m.apply(v)


@given(matrices())
def test_rank_matches_plain_elimination(rows):
    assert QMatrix.from_dense(rows).rank() == oracles.rank(rows)


@given(matrices(), matrices())
def test_product_is_associative_with_vectors(a_rows, b_rows):
    a = QMatrix.from_dense(a_rows)
    b = QMatrix.from_dense([r[: a.nrows] + [Q(0)] * max(0, a.nrows - len(r)) for r in b_rows])
    ab = b @ a
    for j in range(a.ncols):
        e = {j: Q(1)}
        assert ab.apply(e) == b.apply(a.apply(e))


@given(st.integers(1, 5), st.data())
def test_inverse(n, data):
    rows = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))
    m = QMatrix.from_dense(rows)
    if m.rank() < n:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == QMatrix.identity(n)


@given(matrices())
def test_transpose_and_json_round_trip(rows):
    m = QMatrix.from_dense(rows)
    assert m.T.T == m
    assert QMatrix.from_json(m.to_json()) == m
    assert m.T.rank() == m.rank()


@given(matrices(), st.data())
def test_solve(rows, data):
    m = QMatrix.from_dense(rows)
    x = data.draw(st.lists(small, min_size=m.ncols, max_size=m.ncols))
    xm = QMatrix.from_dense([[v] for v in x])
    sol = m.solve(m @ xm)
    assert sol is not None
    assert m @ sol == m @ xm


def test_solve_inconsistent():
    m = QMatrix.from_dense([[1, 0], [0, 0]])
    assert m.solve(QMatrix.from_dense([[0], [1]])) is None


def test_echelon_membership():
    e = Echelon()
    assert e.add({0: Q(1), 1: Q(1)}) is not None
    assert e.add({0: Q(2), 1: Q(2)}) is None
    assert e.contains({0: Q(-1), 1: Q(-1)})
    assert not e.contains({1: Q(1)})
    assert len(e) == 1


def test_span_and_coordinates():
    basis = span_basis([{0: Q(1)}, {0: Q(2)}, {1: Q(1), 2: Q(1)}])
    assert len(basis) == 2
    c = coordinates(basis, {0: Q(3), 1: Q(1), 2: Q(1)})
    assert c is not None
    assert coordinates(basis, {2: Q(1)}) is None


def test_scalar_detection():
    assert QMatrix.diagonal([2, 2, 2]).is_scalar() == 2
    assert QMatrix.diagonal([2, 3]).is_scalar() is None
    assert QMatrix.from_dense([[1, 1], [0, 1]]).is_scalar() is None


def test_rational_format():
    assert fmt_rational(Q(-3, 6)) == "-1/2"
    assert fmt_rational(Q(4)) == "4/1"
