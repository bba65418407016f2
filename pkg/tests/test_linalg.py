from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from pivcat.linalg import Matrix, nullity, solve

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def dense(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


def test_kron_index_convention():
    a = Matrix.from_dense([[1, 2], [3, 4]])
    b = Matrix.identity(2)
    k = a.kron(b)
    assert k[1 * 2 + 0, 0 * 2 + 0] == 3
    assert k[0 * 2 + 1, 1 * 2 + 1] == 2


def test_solve_reports_rank_certificate():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(2), 1: Fraction(2)}]
    assert solve(rows, [1, 3], 2) == (None, (1, 2))
    sol, cert = solve(rows, [1, 2], 2)
    assert cert is None and sol == {0: 1}


@given(dense())
def test_rank_and_nullspace_match_numpy(d):
    m = Matrix.from_dense(d)
    assert m.rank() == np.linalg.matrix_rank(np.array(d, dtype=float))
    ns = m.nullspace()
    assert len(ns) == m.ncols - m.rank() == nullity(m.rows, m.ncols)
    for v in ns:
        assert not any(m.apply(v).values())


@given(dense(4), dense(4))
def test_product_matches_numpy(a, b):
    b = [row[: len(a[0])] + [0] * max(0, len(a[0]) - len(row)) for row in b]
    b = (b * len(a[0]))[: len(a[0])]
    got = (Matrix.from_dense(a) @ Matrix.from_dense(b)).to_dense()
    assert np.array_equal(np.array(got, dtype=float), np.array(a) @ np.array(b))


@given(dense())
def test_transpose_involution(d):
    m = Matrix.from_dense(d)
    assert m.T.T == m
    assert m.T.shape == (m.ncols, m.nrows)
