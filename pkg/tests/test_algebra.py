from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pivcat import vectg
from pivcat.algebra import (GradedAlgebra, algebra_from_table, check_algebra, check_bimodule,
                            check_separable, coset_right_module, dual_numbers, free_bimodule,
                            frobenius_verify, hom_dimension, inner_hom_via_algebra,
                            inner_product_from_frobenius, make_bimodule, normalize, phi_triangulator,
                            projector, regular_bimodule, relative_tensor, rescale, right_regular_module,
                            left_dual_module, simple_bimodules, standard_group_frobenius,
                            subgroup_algebra, ungraded_group_algebra, unit_algebra, validate_algebra)
from pivcat.errors import GradeViolation, NotNormalized, NotSemisimpleBasis, PreconditionFailed
from pivcat.fusion_ring import pointed_ring
from pivcat.groups import cyclic_group, symmetric_group
from pivcat.linalg import Matrix
from pivcat.pointed import (CosetModule, coset_inner_hom, enumerate_characters, module_trace_exists,
                            sign_character, trivial_character)
from pivcat.vectg import GradedVectorSpace

S3 = symmetric_group(3)
Z2 = cyclic_group(2)
A3 = ["e", "(123)", "(132)"]
C12 = ["e", "(12)"]
SIGN = sign_character(S3)


def kz2():
    return subgroup_algebra(Z2, Z2.names)


# --- algebras -------------------------------------------------------------------------

def test_subgroup_algebras():
    a = subgroup_algebra(S3, A3)
    assert a.dim == 3 and check_algebra(a).ok
    assert subgroup_algebra(S3, ["e"]) == unit_algebra(S3)
    assert kz2().dim == 2 and check_algebra(kz2()).ok


def test_non_homogeneous_multiplication():
    sp = GradedVectorSpace(Z2, ("δ_e", "δ_g"), (0, 1))
    bad = algebra_from_table(sp, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}}, {0: 1})
    rep = check_algebra(bad)
    assert not rep["multiplication is grade-homogeneous"].passed
    assert rep["multiplication is grade-homogeneous"].witness == {"out": "δ_g", "in": ("δ_g", "δ_g")}
    with pytest.raises(GradeViolation):
        validate_algebra(bad)


def test_scaled_square_is_still_an_algebra():
    # delta_g * delta_g = 2 delta_e is associative and unital
    sp = GradedVectorSpace(Z2, ("δ_e", "δ_g"), (0, 1))
    a = algebra_from_table(sp, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 2}}, {0: 1})
    assert check_algebra(a).ok


# --- separability -----------------------------------------------------------------------

def test_ka3_splitting_is_the_averaged_one():
    a = subgroup_algebra(S3, A3)
    res = check_separable(a)
    assert res.separable and res.section_verified
    elems = list(a.space.grades)
    pos = {x: i for i, x in enumerate(elems)}
    expected = Matrix(9, 3)
    for c, h in enumerate(elems):
        for x in elems:
            expected.rows[pos[S3.mul(h, S3.inv(x))] * 3 + pos[x]][c] = Fraction(1, 3)
    assert res.splitting == expected


@pytest.mark.parametrize("h", [A3, C12, S3.names], ids=["A3", "Z2", "S3"])
def test_group_algebras_are_separable(h):
    res = check_separable(subgroup_algebra(S3, h))
    assert res.separable and res.section_verified and res.report().ok


def test_dual_numbers_are_not_separable():
    res = check_separable(dual_numbers())
    assert not res.separable
    assert res.certificate == (7, 8)


def test_unit_algebra_is_separable():
    res = check_separable(unit_algebra(S3))
    assert res.separable and res.splitting == Matrix.identity(1)


# --- Frobenius ------------------------------------------------------------------------

def test_kz2_frobenius_scalars():
    f = standard_group_frobenius(kz2(), trivial_character(Z2))
    r = frobenius_verify(f)
    assert r.is_frobenius and r.is_special and r.is_symmetric and not r.is_normalized
    assert (r.beta_A, r.beta_1) == (2, 1)
    n = frobenius_verify(normalize(f))
    assert n.is_normalized and (n.beta_A, n.beta_1) == (1, 2)
    same = frobenius_verify(rescale(f, Fraction(1, 2)))
    assert (same.beta_A, same.beta_1) == (1, 2)


@given(st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7))
def test_beta_product_is_rescaling_invariant(lam):
    f = standard_group_frobenius(kz2(), trivial_character(Z2))
    r = frobenius_verify(rescale(rescale(f, lam), 3))
    assert r.beta_A * r.beta_1 == 2


def test_symmetry_depends_on_pivotal_restriction():
    assert frobenius_verify(standard_group_frobenius(subgroup_algebra(S3, A3), SIGN)).is_symmetric
    r = frobenius_verify(standard_group_frobenius(subgroup_algebra(S3, C12), SIGN))
    assert r.is_frobenius and not r.is_symmetric
    assert r.witnesses["symmetric"]["pivotal_side"] == "-1"


def test_dual_numbers_frobenius_but_not_special():
    from pivcat.algebra import frobenius_from_counit
    f = frobenius_from_counit(dual_numbers(), {1: 1}, trivial_character(dual_numbers().group))
    r = frobenius_verify(f)
    assert r.is_frobenius and not r.is_special and not r.is_separable


@settings(max_examples=20)
@given(st.sampled_from([(h, k) for h in S3.all_subgroups for k in enumerate_characters(S3, 2)]))
def test_symmetric_iff_module_trace(case):
    h, k = case
    r = frobenius_verify(standard_group_frobenius(subgroup_algebra(S3, h), k))
    assert r.is_symmetric == module_trace_exists(S3, h, k)


# --- modules, Hom, relative tensor --------------------------------------------------

def test_hom_dimensions():
    ung = ungraded_group_algebra(Z2)
    assert hom_dimension(regular_bimodule(ung), regular_bimodule(ung)) == 2  # centre of kZ2
    assert hom_dimension(regular_bimodule(kz2()), regular_bimodule(kz2())) == 1
    a3 = subgroup_algebra(S3, A3)
    f_e, f_12 = free_bimodule(a3, a3, 0), free_bimodule(a3, a3, S3.index("(12)"))
    assert hom_dimension(f_e, f_12) == 0
    assert hom_dimension(f_e, f_e) >= 1


def test_simple_bimodules_of_ka3():
    a3 = subgroup_algebra(S3, A3)
    h = S3.subgroup(A3)
    simples = simple_bimodules(a3, a3, h, h)
    assert len(simples) == 6
    for s in simples:
        assert check_bimodule(s).ok
    gram = [[hom_dimension(x, y) for y in simples] for x in simples]
    assert gram == [[int(i == j) for j in range(6)] for i in range(6)]


def test_projector():
    f = normalize(standard_group_frobenius(kz2(), trivial_character(Z2)))
    a = right_regular_module(kz2())
    P = projector(f, a, a)
    assert P.shape == (4, 4) and P @ P == P and P.rank() == 2
    u = unit_algebra(S3)
    fu = standard_group_frobenius(u, trivial_character(S3))
    x = make_bimodule(vectg.simple_space(S3, 1), None, u)
    assert projector(fu, x, x) == Matrix.identity(1)
    with pytest.raises(NotNormalized):
        projector(standard_group_frobenius(kz2(), trivial_character(Z2)), a, a)


def test_relative_tensor_methods_agree():
    A = kz2()
    f = normalize(standard_group_frobenius(A, trivial_character(Z2)))
    rt = relative_tensor(f, right_regular_module(A), left_dual_module(right_regular_module(A)), "both")
    assert rt.dim == 2
    reg = regular_bimodule(A)
    assert relative_tensor(A, reg, reg).dim == A.dim


def test_coset_tensors_match_double_cosets():
    a3 = subgroup_algebra(S3, A3)
    mods = CosetModule(S3, A3)
    for x in mods.representatives:
        for y in mods.representatives:
            cls = inner_hom_via_algebra(a3, coset_right_module(a3, x), coset_right_module(a3, y))
            expected = coset_inner_hom(mods, mods.coset_of(x), mods.coset_of(y))
            assert cls == expected
    reg = right_regular_module(a3)
    assert str(inner_hom_via_algebra(a3, reg, reg)) == "e + (123) + (132)"


def test_inner_hom_over_unit_algebra():
    u = unit_algebra(S3)
    g, h = S3.index("(12)"), S3.index("(123)")
    n = make_bimodule(vectg.simple_space(S3, g), None, u)
    nt = make_bimodule(vectg.simple_space(S3, h), None, u)
    assert inner_hom_via_algebra(u, n, nt) == pointed_ring(S3).basis(S3.mul(g, S3.inv(h)))


@given(st.sampled_from(S3.all_subgroups), st.data())
def test_cross_layer_inner_homs(h, data):
    a = subgroup_algebra(S3, h)
    mods = CosetModule(S3, h)
    x = data.draw(st.sampled_from(mods.representatives))
    y = data.draw(st.sampled_from(mods.representatives))
    cls = inner_hom_via_algebra(a, coset_right_module(a, x), coset_right_module(a, y))
    assert cls == coset_inner_hom(mods, mods.coset_of(x), mods.coset_of(y))


@settings(max_examples=15)
@given(st.data())
def test_hom_dimension_symmetric_on_simples(data):
    a3 = subgroup_algebra(S3, A3)
    h = S3.subgroup(A3)
    simples = simple_bimodules(a3, a3, h, h) + [free_bimodule(a3, a3, 0), regular_bimodule(a3)]
    x = data.draw(st.sampled_from(simples))
    y = data.draw(st.sampled_from(simples))
    assert hom_dimension(x, y) == hom_dimension(y, x)


# --- inner products and triangulators -------------------------------------------------

def test_inner_product_from_frobenius():
    a3 = subgroup_algebra(S3, A3)
    f = normalize(standard_group_frobenius(a3, SIGN))
    m = right_regular_module(a3)
    iso = inner_product_from_frobenius(f, m, m)
    assert iso.square_commutes and iso.rank == 3
    u = unit_algebra(S3)
    fu = standard_group_frobenius(u, trivial_character(S3))
    x = make_bimodule(vectg.simple_space(S3, 1), None, u)
    assert inner_product_from_frobenius(fu, x, x).matrix == Matrix.identity(1)
    c12 = subgroup_algebra(S3, C12)
    with pytest.raises(PreconditionFailed) as exc:
        inner_product_from_frobenius(normalize(standard_group_frobenius(c12, SIGN)), right_regular_module(c12),
                                     right_regular_module(c12))
    assert exc.value.witness == "symmetric"


def test_phi_triangulator():
    a3 = subgroup_algebra(S3, A3)
    h = S3.subgroup(A3)
    simples = simple_bimodules(a3, a3, h, h)
    for obj in (regular_bimodule(a3), free_bimodule(a3, a3, 0), simples[0]):
        assert phi_triangulator(simples, obj).ok
    assert phi_triangulator(simples[:1], simples[0]).ok
    u = unit_algebra(S3)
    k = make_bimodule(vectg.unit_space(S3), u, u)
    assert phi_triangulator([k], k).ok
    with pytest.raises(NotSemisimpleBasis):
        phi_triangulator([simples[0], simples[0]], simples[0])
