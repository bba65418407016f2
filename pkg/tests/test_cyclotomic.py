from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from pivcat.cyclotomic import CyclotomicScalar, cyclotomic_polynomial, format_scalar, parse_scalar


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_zeta_relations():
    z3 = CyclotomicScalar.zeta(3)
    assert z3 ** 3 == 1
    assert 1 + z3 + z3 ** 2 == 0
    assert str(z3 ** 2) == "-1 - z"
    assert CyclotomicScalar.zeta(2) == -1
    assert CyclotomicScalar.zeta(4) ** 2 == -1


def test_mixed_orders_lift():
    z3, z4 = CyclotomicScalar.zeta(3), CyclotomicScalar.zeta(4)
    prod = z3 * z4
    assert prod.order == 12
    assert prod ** 12 == 1
    assert CyclotomicScalar.zeta(6) ** 2 == z3


def test_formatting():
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert format_scalar(Fraction(1, 3), approx=True) == "0.333333333333"
    assert format_scalar(CyclotomicScalar.rational(2, 3)) == "2"
    assert format_scalar(CyclotomicScalar.zeta(4), approx=True) == "0+1i"
    assert parse_scalar(" -7/2 ") == Fraction(-7, 2)


def test_inverse_of_zero_fails():
    with pytest.raises(ZeroDivisionError):
        CyclotomicScalar(5).inverse()


ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])
COEFF = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def scalars(draw, order=None):
    m = order if order is not None else draw(ORDERS)
    return CyclotomicScalar(m, draw(st.lists(COEFF, min_size=0, max_size=6)))


def approx(x: CyclotomicScalar) -> complex:
    # independent evaluation at the primitive root
    return sum(complex(c) * cmath.exp(2j * cmath.pi * k / x.order) for k, c in enumerate(x.coeffs))


@given(scalars(), scalars())
def test_ring_operations_match_complex_evaluation(x, y):
    assert abs(approx(x + y) - (approx(x) + approx(y))) < 1e-9
    assert abs(approx(x * y) - approx(x) * approx(y)) < 1e-6
    assert abs(complex(x) - approx(x)) < 1e-9


@given(scalars())
def test_inverse(x):
    assume(x)
    assert x * x.inverse() == 1
    assert x / x == 1


@given(scalars(), scalars(), scalars())
def test_distributive_and_associative(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
