from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from pivcat.cyclotomic import CyclotomicScalar
from pivcat.linalg import Matrix
from pivcat.groups import cyclic_group, symmetric_group
from pivcat.pointed import character_from_exponents, enumerate_characters, sign_character
from pivcat.vectg import (GradedVectorSpace, coev, coev_prime, compose, ev, ev_prime, homogeneity_violation,
                          identity, left_dual_morphism, left_trace, right_dual_morphism, right_trace,
                          tensor)

S3 = symmetric_group(3)
Z3 = cyclic_group(3)


@st.composite
def spaces(draw, group=S3):
    grades = draw(st.lists(st.integers(0, group.order - 1), min_size=1, max_size=4))
    return GradedVectorSpace(group, tuple(f"x{i}" for i in range(len(grades))), tuple(grades))


@st.composite
def homogeneous_maps(draw, x):
    rows = [{j: Fraction(draw(st.integers(-3, 3))) for j in range(x.dim) if x.grades[i] == x.grades[j]}
            for i in range(x.dim)]
    return Matrix(x.dim, x.dim, rows)


@given(spaces())
def test_snake_identities(x):
    n = x.dim
    # (ev (x) 1)(1 (x) coev) on X* and (1 (x) ev)(coev (x) 1) on X
    assert compose(tensor(ev(x), identity(n)), tensor(identity(n), coev(x))) == identity(n)
    assert compose(tensor(identity(n), ev(x)), tensor(coev(x), identity(n))) == identity(n)
    assert compose(tensor(ev_prime(x), identity(n)), tensor(identity(n), coev_prime(x))) == identity(n)


@given(spaces(), st.data())
def test_duals_of_morphisms_are_transposes(x, data):
    f = data.draw(homogeneous_maps(x))
    assert right_dual_morphism(f, x, x) == f.T
    assert left_dual_morphism(f, x, x) == f.T
    assert homogeneity_violation(f, x, x) is None


@given(spaces(), st.data())
def test_traces_are_weighted_diagonals(x, data):
    f = data.draw(homogeneous_maps(x))
    k = data.draw(st.sampled_from(enumerate_characters(S3, 2)))
    expected_r = sum((k.value(x.grades[i]) * f[i, i] for i in range(x.dim)), CyclotomicScalar(2))
    expected_l = sum((k.value(x.grades[i]).inverse() * f[i, i] for i in range(x.dim)), CyclotomicScalar(2))
    assert right_trace(f, x, k) == expected_r
    assert left_trace(f, x, k) == expected_l


def test_trace_asymmetry_on_z3():
    k = character_from_exponents(Z3, 3, {"g": 1})
    x = GradedVectorSpace(Z3, ("v",), (1,))
    f = Matrix.identity(1)
    z = CyclotomicScalar.zeta(3)
    assert right_trace(f, x, k) == z and left_trace(f, x, k) == z ** 2


def test_non_homogeneous_map_is_flagged():
    x = GradedVectorSpace(S3, ("a", "b"), (0, 1))
    f = Matrix.from_dense([[0, 1], [0, 0]])
    assert homogeneity_violation(f, x, x) == (0, 1)


def test_sign_trace_of_odd_permutation():
    x = GradedVectorSpace(S3, ("v",), (S3.index("(12)"),))
    assert right_trace(Matrix.identity(1), x, sign_character(S3)) == -1
