from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pivcat.errors import (AssociativityViolation, DualityViolation, ReciprocityViolation,
                           SizeGuardExceeded, UnitViolation)
from pivcat.fusion_ring import (build_fusion_ring, check_star_axioms, fibonacci_ring,
                                fp_dimensions, ising_ring, multiply, pointed_ring, star,
                                trivial_ring)
from pivcat.groups import cyclic_group, dihedral_group, symmetric_group, trivial_group

PHI = 1.6180339887498949


def elem(ring, **kw):
    return ring.element({ring.index(k): v for k, v in kw.items()})


def test_z2_ring_is_valid(backend):
    r = build_fusion_ring(["1", "g"], 0, [0, 1], {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1})
    assert r.rank == 2
    assert star(r, r.basis("g")) == r.basis("g")


def test_fibonacci_products():
    r = fibonacci_ring()
    tau, one = r.basis("τ"), r.one()
    assert multiply(r, tau, tau) == one + tau
    assert str(multiply(r, one + tau, tau)) == "1 + 2*τ"
    assert one * (one + tau) == one + tau


def test_fibonacci_with_double_unit_channel_is_rejected(backend):
    with pytest.raises(DualityViolation) as exc:
        build_fusion_ring(["1", "τ"], 0, [0, 1],
                          {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 2, (1, 1, 1): 1})
    assert exc.value.witness == (1, 1)


def test_bad_unit_row_is_rejected():
    with pytest.raises(UnitViolation):
        build_fusion_ring(["1", "g"], 0, [0, 1], {(0, 0, 0): 1, (0, 1, 1): 1, (1, 1, 0): 1})


def test_non_associative_data_is_rejected(backend):
    # a*a = 1 + a, b*b = 1 + a, a*b = b: reciprocity holds but (aa)b = 2b != a(ab) = b
    c = {(0, i, i): 1 for i in range(3)} | {(i, 0, i): 1 for i in range(1, 3)}
    c |= {(1, 1, 0): 1, (1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 0): 1, (2, 2, 1): 1}
    with pytest.raises(AssociativityViolation) as exc:
        build_fusion_ring(["1", "a", "b"], 0, [0, 1, 2], c)
    assert exc.value.witness == (1, 1, 2, 2)


def test_reciprocity_is_checked():
    c = {(0, i, i): 1 for i in range(3)} | {(i, 0, i): 1 for i in range(3)}
    c |= {(1, 1, 0): 1, (2, 2, 0): 1, (1, 2, 1): 1, (2, 1, 2): 1}
    with pytest.raises(ReciprocityViolation):
        build_fusion_ring(["1", "a", "b"], 0, [0, 1, 2], c)


def test_size_guard():
    g = cyclic_group(5)
    with pytest.raises(SizeGuardExceeded):
        build_fusion_ring(list(g.names), 0, list(g.inverse),
                          {(a, b, g.mul(a, b)): 1 for a in range(5) for b in range(5)}, max_simples=4)


def test_star_on_pointed_s3():
    g = symmetric_group(3)
    r = pointed_ring(g)
    assert star(r, r.basis("(123)")) == r.basis("(132)")
    assert star(r, r.basis("(12)")) == r.basis("(12)")


def test_star_on_fibonacci_is_identity():
    r = fibonacci_ring()
    x = elem(r, **{"1": Fraction(2, 3), "τ": -5})
    assert star(r, x) == x


@pytest.mark.parametrize("ring", [fibonacci_ring(), ising_ring(), pointed_ring(symmetric_group(3)),
                                  pointed_ring(cyclic_group(4)), trivial_ring()],
                         ids=["fib", "ising", "S3", "Z4", "trivial"])
def test_star_axioms_pass(ring):
    assert check_star_axioms(ring).ok


def test_fp_dimensions(backend):
    np.testing.assert_allclose(fp_dimensions(fibonacci_ring()), [1.0, PHI], atol=1e-9)
    np.testing.assert_allclose(fp_dimensions(ising_ring()), [1.0, 2 ** 0.5, 1.0], atol=1e-9)
    assert list(fp_dimensions(pointed_ring(symmetric_group(3)))) == pytest.approx([1.0] * 6)
    assert list(fp_dimensions(pointed_ring(cyclic_group(2)))) == pytest.approx([1.0, 1.0])


def test_pointed_ring_shapes():
    assert pointed_ring(trivial_group()).rank == 1
    assert pointed_ring(cyclic_group(2)).labels == ("e", "g")
    assert pointed_ring(symmetric_group(3)).rank == 6


# --- properties -------------------------------------------------------------------

GROUPS = [cyclic_group(n) for n in range(1, 7)] + [symmetric_group(3), dihedral_group(4)]


@given(st.sampled_from(GROUPS))
def test_pointed_ring_always_validates(g):
    r = pointed_ring(g)
    assert r.rank == g.order
    assert check_star_axioms(r).ok


RINGS = [fibonacci_ring(), ising_ring(), pointed_ring(symmetric_group(3))]


@st.composite
def ring_pairs(draw):
    r = draw(st.sampled_from(RINGS))
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    x = r.element({i: draw(coeff) for i in range(r.rank)})
    y = r.element({i: draw(coeff) for i in range(r.rank)})
    return r, x, y


@given(ring_pairs())
def test_star_is_involutive_anti_automorphism(data):
    r, x, y = data
    assert star(r, multiply(r, x, y)) == multiply(r, star(r, y), star(r, x))
    assert star(r, star(r, x)) == x


@given(ring_pairs())
def test_multiplication_is_bilinear_and_unital(data):
    r, x, y = data
    assert multiply(r, r.one(), x) == x == multiply(r, x, r.one())
    assert multiply(r, x + y, y) == multiply(r, x, y) + multiply(r, y, y)


@given(st.sampled_from(RINGS + [pointed_ring(dihedral_group(4))]))
def test_fp_dimensions_at_least_one(r):
    dims = fp_dimensions(r)
    assert dims[r.unit] == pytest.approx(1.0)
    assert (dims >= 1 - 1e-12).all()
