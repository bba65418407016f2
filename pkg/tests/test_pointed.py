from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pivcat.cyclotomic import CyclotomicScalar
from pivcat.errors import CharacterViolation, Infeasible, NotASubgroup
from pivcat.fusion_ring import pointed_ring
from pivcat.gr_modules import inner_hom_left, unit_bimodule
from pivcat.groups import cyclic_group, dihedral_group, symmetric_group, trivial_group
from pivcat.pointed import (Character, CosetModule, build_module_trace, character_from_exponents,
                            conjugate_pivotal, coset_inner_hom, coset_to_nimrep, double_coset_tensor,
                            enumerate_characters, enumerate_module_traces, module_trace_exists,
                            sign_character, spherical_check, trace_of_simple, trace_solution_nullity,
                            trivial_character)

S3 = symmetric_group(3)
D4 = dihedral_group(4)
Z3 = cyclic_group(3)
A3 = ["e", "(123)", "(132)"]
C12 = ["e", "(12)"]
SIGN = sign_character(S3)


def chi3() -> Character:
    return character_from_exponents(Z3, 3, {"g": 1})


# --- characters and traces ---------------------------------------------------------

def test_enumerate_characters():
    assert [k.is_trivial() for k in enumerate_characters(S3, 2)] == [True, False]
    assert len(enumerate_characters(Z3, 3)) == 3
    assert len(enumerate_characters(D4, 4)) == 4
    for g in (S3, D4, trivial_group()):
        only = enumerate_characters(g, 1)
        assert len(only) == 1 and only[0].is_trivial()


def test_character_validation():
    with pytest.raises(CharacterViolation):
        Character(Z3, 3, (0, 1, 1))


def test_conjugate_pivotal():
    assert conjugate_pivotal(SIGN) == SIGN
    assert conjugate_pivotal(chi3()).exponents == (0, 2, 1)
    t = trivial_character(S3)
    assert conjugate_pivotal(t) == t


def test_trace_of_simple():
    assert trace_of_simple(trivial_character(S3), "(123)", "left") == 1
    left = trace_of_simple(SIGN, "(12)", "left")
    right = trace_of_simple(SIGN, "(12)", "right")
    assert left == right == -1 and left * right == 1
    k = chi3()
    z = CyclotomicScalar.zeta(3)
    assert trace_of_simple(k, "g", "right") == z
    assert trace_of_simple(k, "g", "left") == z ** 2
    assert trace_of_simple(k, "g", "right") / trace_of_simple(k, "g", "left") == z ** 2
    assert trace_of_simple(k, "g", "left", scalar=3) == 3 * z ** 2


def test_spherical():
    assert spherical_check(SIGN)
    assert not spherical_check(chi3())
    assert spherical_check(trivial_character(D4))


# --- module traces -------------------------------------------------------------------

def test_module_trace_examples(backend):
    assert module_trace_exists(S3, A3, SIGN)
    assert not module_trace_exists(S3, C12, SIGN)
    tr = build_module_trace(S3, A3, SIGN)
    assert {k: str(v) for k, v in tr.values().items()} == {"H": "1", "H(12)": "-1"}
    with pytest.raises(Infeasible) as exc:
        build_module_trace(S3, C12, SIGN)
    assert exc.value.witness["product"] == "-1"
    assert exc.value.witness["cycle"]
    whole = build_module_trace(S3, S3.names, trivial_character(S3))
    assert whole.exponents == (0,)


def test_not_a_subgroup():
    with pytest.raises(NotASubgroup):
        module_trace_exists(S3, ["e", "(12)", "(13)"], SIGN)


def _oracle_solutions(g, h, kappa) -> int:
    """Count normalized solutions of theta(g.c) = kappa(g)^-1 theta(c) from scratch."""
    h = g.subgroup(h)
    cos = []
    for x in range(g.order):
        c = frozenset(g.mul(a, x) for a in h)
        if c not in cos:
            cos.append(c)
    m = kappa.root_order
    home = cos.index(frozenset(h))
    count = 0
    for th in itertools.product(range(m), repeat=len(cos)):
        if th[home]:
            continue
        count += all(th[cos.index(frozenset(g.mul(a, g.mul(min(c), g.inv(s))) for a in h))]
                     == (th[i] - kappa.exponents[s]) % m
                     for s in range(g.order) for i, c in enumerate(cos))
    return count


# frozen from the oracle above: (cases, cases with a module trace)
FROZEN_COUNTS = {"S3": (12, 8), "D4": (40, 23)}


@pytest.mark.parametrize("g,m", [(S3, 2), (D4, 4)], ids=["S3", "D4"])
def test_trace_criterion_counts(g, m, backend):
    cases = [(h, k) for h in g.all_subgroups for k in enumerate_characters(g, m)]
    exists = sum(module_trace_exists(g, h, k) for h, k in cases)
    assert (len(cases), exists) == FROZEN_COUNTS[g.name]
    for h, k in cases:
        count, _ = enumerate_module_traces(g, h, k)
        assert count == _oracle_solutions(g, h, k) == int(module_trace_exists(g, h, k))


def test_uniqueness_up_to_scalar(backend):
    assert enumerate_module_traces(S3, A3, SIGN, normalize=True)[0] == 1
    assert enumerate_module_traces(S3, A3, SIGN, normalize=False)[0] == 2  # one mu_2 orbit
    assert trace_solution_nullity(S3, A3, SIGN) == 1
    assert trace_solution_nullity(S3, C12, SIGN) == 0


@st.composite
def trace_cases(draw):
    g, m = draw(st.sampled_from([(S3, 2), (D4, 4), (cyclic_group(4), 4), (Z3, 3)]))
    h = draw(st.sampled_from(g.all_subgroups))
    k = draw(st.sampled_from(enumerate_characters(g, m)))
    return g, h, k


@given(trace_cases())
def test_closed_form_agrees_with_propagation(case):
    g, h, k = case
    try:
        build_module_trace(g, h, k)
        solved = True
    except Infeasible:
        solved = False
    assert solved == module_trace_exists(g, h, k)
    assert trace_solution_nullity(g, h, k) == int(solved)


@given(trace_cases())
def test_conjugation_properties(case):
    _, _, k = case
    conj = conjugate_pivotal(k)
    assert conjugate_pivotal(conj) == k
    assert spherical_check(k) == (conj == k)
    for x in range(k.group.order):
        assert trace_of_simple(conj, x, "right") == trace_of_simple(k, x, "left")


# --- coset modules -----------------------------------------------------------------

def test_coset_inner_hom_examples():
    z2 = cyclic_group(2)
    m = CosetModule(z2, ["e"])
    assert coset_inner_hom(m, 0, 0) == pointed_ring(z2).basis("e")
    a3 = CosetModule(S3, A3, name="A3")
    assert str(coset_inner_hom(a3, "A3", "A3")) == "e + (123) + (132)"


def test_coset_to_nimrep_shapes():
    assert coset_to_nimrep(CosetModule(S3, S3.names)).size == 1
    reg = coset_to_nimrep(CosetModule(S3, ["e"]))
    u = unit_bimodule(pointed_ring(S3))
    assert reg.size == 6
    # the regular coset module carries the left regular action up to relabeling
    assert sorted(int(reg.L(d).trace()) for d in range(6)) == sorted(int(u.L(d).trace()) for d in range(6))


@given(st.sampled_from([S3, D4, cyclic_group(6)]), st.data())
def test_adjunction_dimension_identity(g, data):
    m = CosetModule(g, data.draw(st.sampled_from(g.all_subgroups)))
    nim = coset_to_nimrep(m)
    a = data.draw(st.integers(0, m.size - 1))
    b = data.draw(st.integers(0, m.size - 1))
    ih = coset_inner_hom(m, a, b)
    assert ih == inner_hom_left(nim, a, b)
    assert ih.coefficient(g.identity) == int(a == b)
    for x in range(g.order):
        assert ih.coefficient(x) == m.hom_dimension(a, x, b)


# --- double cosets -------------------------------------------------------------------

def test_double_coset_examples(backend):
    d = double_coset_tensor(S3, A3, A3)
    assert d.size == 2 and d.rieffel_table == [[3, 0], [0, 3]] and d.pairings_agree
    assert d.hom_rank == 2
    assert double_coset_tensor(S3, C12, A3).size == 1
    z4 = cyclic_group(4)
    d = double_coset_tensor(z4, ["e", "g2"], ["e", "g2"])
    assert d.size == 2 and d.pairings_agree and d.hom_rank == 2
    free = double_coset_tensor(S3, ["e"], ["e"])
    assert free.size == 6 and free.rieffel_table == [[int(i == j) for j in range(6)] for i in range(6)]


@settings(max_examples=12)  # each case solves |G|^2 Hom systems
@given(st.sampled_from([S3, cyclic_group(4)]), st.data())
def test_double_coset_pairings(g, data):
    h = data.draw(st.sampled_from(g.all_subgroups))
    k = data.draw(st.sampled_from(g.all_subgroups))
    d = double_coset_tensor(g, h, k)
    assert d.well_defined and d.pairings_agree and d.size == d.hom_rank
    assert sum(len(b) for b in d.basis) == g.order
