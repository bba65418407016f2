"""Module and bimodule categories at the level of Grothendieck groups.

A :class:`NimRep` stores one non-negative integer matrix per ring basis
element, ``L(d)[a, b] = dim Hom(m_a, d |> m_b)``.  Right actions use
``R(c)[a, b] = dim Hom(m_a, m_b <| c)``; since ``(m <| c) <| d = m <| (c d)``
they satisfy ``R(c) R(d) = sum_k N_dc^k R(k)``.

Inner homs are read off the matrices: the coefficient of ``d`` in
``<m_a, m_b>`` is ``L(d)[a, b]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import (AmbiguousSerrePermutation, CommutationViolation, LabelUnknown,
                     NoSerrePermutation, ReciprocityViolation, RepresentationViolation,
                     RingMismatch, SizeGuardExceeded, UnitViolation, ValidationError)
from .fusion_ring import FusionRing, RingElement, multiply, star, trivial_ring
from .report import Report

DEFAULT_MAX_SERRE_LABELS = 8


class NimRep:
    """Validated NIM-rep of a fusion ring; build with :func:`build_nimrep`."""

    def __init__(self, ring: FusionRing, module_labels: Sequence[str], matrices: np.ndarray,
                 side: str = "left"):
        self.ring = ring
        self.module_labels = tuple(module_labels)
        matrices = np.array(matrices, dtype=np.int64)
        matrices.setflags(write=False)
        self.matrices = matrices
        self.side = side
        self._index = {lab: i for i, lab in enumerate(self.module_labels)}

    @property
    def size(self) -> int:
        return len(self.module_labels)

    def __repr__(self) -> str:
        return f"NimRep({self.side}, ring={self.ring!r}, labels={list(self.module_labels)})"

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.size:
                raise LabelUnknown(f"module index {label} out of range")
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise LabelUnknown(f"unknown module label {label!r}") from None

    def matrix(self, c) -> np.ndarray:
        return self.matrices[self.ring.index(c)]

    def same_data(self, other: "NimRep") -> bool:
        return (self.ring == other.ring and self.module_labels == other.module_labels
                and self.side == other.side and np.array_equal(self.matrices, other.matrices))


def build_nimrep(ring: FusionRing, module_labels: Sequence[str],
                 action: Mapping | Sequence | np.ndarray, side: str = "left") -> NimRep:
    """Validate and return a NIM-rep.

    ``action`` maps ring labels to square integer matrices (or is an array
    indexed by ring basis index).  Checks: shape and sign, ``L(1) = I``,
    reciprocity ``L(d*) = L(d)^T``, and the (anti-)representation property.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = len(module_labels)
    if n == 0 or len(set(module_labels)) != n:
        raise ValidationError("module labels must be non-empty and distinct")
    r = ring.rank
    mats = np.zeros((r, n, n), dtype=np.int64)
    if isinstance(action, Mapping):
        for lab, mat in action.items():
            mats[ring.index(lab)] = _square(mat, n, lab)
    else:
        arr = np.asarray(action)
        if arr.shape != (r, n, n):
            raise ValidationError(f"action array has shape {arr.shape}, expected {(r, n, n)}")
        for d in range(r):
            mats[d] = _square(arr[d], n, ring.labels[d])
    if not np.array_equal(mats[ring.unit], np.eye(n, dtype=np.int64)):
        raise UnitViolation("the unit must act as the identity matrix", witness=(ring.labels[ring.unit],))
    for d in range(r):
        if not np.array_equal(mats[ring.dual[d]], mats[d].T):
            raise ReciprocityViolation(
                f"matrix of {ring.labels[ring.dual[d]]} is not the transpose of that of {ring.labels[d]}",
                witness=(ring.labels[d],))
    bad = _kernels.representation_violation(mats, ring.dense, right=(side == "right"))
    if bad is not None:
        c, d = bad
        raise RepresentationViolation(
            f"{side} action fails the representation property at ({ring.labels[c]}, {ring.labels[d]})",
            witness=(ring.labels[c], ring.labels[d]))
    return NimRep(ring, module_labels, mats, side)


def _square(mat, n, lab) -> np.ndarray:
    arr = np.asarray(mat)
    if arr.shape != (n, n):
        raise ValidationError(f"matrix for {lab!r} has shape {arr.shape}, expected {(n, n)}")
    if (arr < 0).any() or not np.array_equal(arr, np.round(arr)):
        raise ValidationError(f"matrix for {lab!r} must have non-negative integer entries")
    return arr.astype(np.int64)


def trivial_nimrep(ring: FusionRing, module_labels: Sequence[str], side: str) -> NimRep:
    """Action of the one-label ring by identity matrices."""
    if ring.rank != 1:
        raise ValidationError("only the trivial ring acts trivially")
    n = len(module_labels)
    return build_nimrep(ring, module_labels, np.eye(n, dtype=np.int64)[None], side=side)


@dataclass(frozen=True)
class BimoduleNim:
    """A (D, C)-bimodule: left NIM-rep over D and right NIM-rep over C on shared labels."""

    left: NimRep
    right: NimRep

    @property
    def module_labels(self) -> tuple[str, ...]:
        return self.left.module_labels

    @property
    def left_ring(self) -> FusionRing:
        return self.left.ring

    @property
    def right_ring(self) -> FusionRing:
        return self.right.ring

    @property
    def size(self) -> int:
        return self.left.size

    def index(self, label) -> int:
        return self.left.index(label)

    def L(self, d) -> np.ndarray:
        return self.left.matrix(d)

    def R(self, c) -> np.ndarray:
        return self.right.matrix(c)

    def same_data(self, other: "BimoduleNim") -> bool:
        return self.left.same_data(other.left) and self.right.same_data(other.right)


def build_bimodule(left: NimRep, right: NimRep | None = None) -> BimoduleNim:
    """Pair a left and a right NIM-rep, checking the middle commutation law.

    Without ``right`` the right action is the trivial ring acting by identities.
    """
    if left.side != "left":
        raise ValidationError("first argument must be a left NIM-rep")
    if right is None:
        right = trivial_nimrep(trivial_ring(), left.module_labels, "right")
    if right.side != "right":
        raise ValidationError("second argument must be a right NIM-rep")
    if right.module_labels != left.module_labels:
        raise ValidationError("left and right actions must share module labels")
    bad = _kernels.commutation_violation(left.matrices, right.matrices)
    if bad is not None:
        d, c = bad
        raise CommutationViolation(
            f"L({left.ring.labels[d]}) and R({right.ring.labels[c]}) do not commute",
            witness=(left.ring.labels[d], right.ring.labels[c]))
    return BimoduleNim(left, right)


def unit_bimodule(ring: FusionRing) -> BimoduleNim:
    """The ring acting on itself from both sides (the regular bimodule)."""
    N = ring.dense
    # L(d)[a, b] = N_{d b}^a ; R(c)[a, b] = N_{b c}^a
    L = np.transpose(N, (0, 2, 1))
    R = np.transpose(N, (1, 2, 0))
    left = build_nimrep(ring, ring.labels, L, side="left")
    right = build_nimrep(ring, ring.labels, R, side="right")
    return build_bimodule(left, right)


# --- elements -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModuleElement:
    """Class in Gr(M) tensor Q: sparse map from module-label index to rational."""

    labels: tuple[str, ...]
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            if not 0 <= k < len(self.labels):
                raise LabelUnknown(f"module index {k} out of range")
            if v:
                clean[int(k)] = Fraction(v)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, m: BimoduleNim, label) -> "ModuleElement":
        return cls(m.module_labels, {m.index(label): 1})

    def vector(self) -> np.ndarray:
        v = np.zeros(len(self.labels), dtype=object)
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleElement) and self.labels == other.labels
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join((self.labels[k] if v == 1 else f"{v}*{self.labels[k]}")
                          for k, v in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class FormalTensor:
    """Formal sum of ``coef * (m |x| n)`` before descent to the relative product."""

    terms: tuple[tuple[Fraction, int, int], ...]

    @classmethod
    def pure(cls, M: BimoduleNim, N: BimoduleNim, m, n, coef=1) -> "FormalTensor":
        return cls(((Fraction(coef), M.index(m), N.index(n)),))

    def __add__(self, other: "FormalTensor") -> "FormalTensor":
        return FormalTensor(self.terms + other.terms)


def act_left(m: BimoduleNim, d: int, x: ModuleElement) -> ModuleElement:
    """Class of ``d |> x``: multiplicity of ``m_a`` is ``sum_b L(d)[a, b] x_b``."""
    L = m.left.matrices[d]
    out: dict[int, Fraction] = {}
    for b, v in x.coeffs.items():
        for a in np.flatnonzero(L[:, b]):
            out[int(a)] = out.get(int(a), 0) + v * int(L[a, b])
    return ModuleElement(m.module_labels, out)


def act_right(m: BimoduleNim, c: int, x: ModuleElement) -> ModuleElement:
    """Class of ``x <| c``."""
    R = m.right.matrices[c]
    out: dict[int, Fraction] = {}
    for b, v in x.coeffs.items():
        for a in np.flatnonzero(R[:, b]):
            out[int(a)] = out.get(int(a), 0) + v * int(R[a, b])
    return ModuleElement(m.module_labels, out)


def act_right_by(m: BimoduleNim, x: ModuleElement, c: RingElement) -> ModuleElement:
    out = ModuleElement(m.module_labels, {})
    for k, coef in c.coeffs.items():
        part = act_right(m, k, x)
        merged = dict(out.coeffs)
        for a, v in part.coeffs.items():
            merged[a] = merged.get(a, 0) + coef * v
        out = ModuleElement(m.module_labels, merged)
    return out


# --- inner homs -----------------------------------------------------------

def inner_hom_left(m: BimoduleNim, a, b) -> RingElement:
    """``<m_a, m_b>`` in the left ring: ``sum_d L(d)[a, b] * d``."""
    i, j = m.index(a), m.index(b)
    col = m.left.matrices[:, i, j]
    return RingElement(m.left_ring, {d: int(v) for d, v in enumerate(col) if v})


def inner_hom_right(m: BimoduleNim, a, b) -> RingElement:
    """``<m_a, m_b>`` in the right ring: ``sum_c R(c)[b, a] * c``."""
    i, j = m.index(a), m.index(b)
    col = m.right.matrices[:, j, i]
    return RingElement(m.right_ring, {c: int(v) for c, v in enumerate(col) if v})


def inner_hom_elements(m: BimoduleNim, x: ModuleElement, y: ModuleElement) -> RingElement:
    """Bilinear extension of :func:`inner_hom_left` to module classes."""
    out = m.left_ring.zero()
    for a, u in x.coeffs.items():
        for b, v in y.coeffs.items():
            out = out + inner_hom_left(m, a, b).scale(u * v)
    return out


def verify_inner_product_axioms(m: BimoduleNim) -> Report:
    """Exhaustive check of linearity, hermiticity, non-degeneracy and bimodule compatibility."""
    rep = Report("verify_inner_product_axioms")
    D, C = m.left_ring, m.right_ring
    n = m.size
    labels = m.module_labels
    basis = [ModuleElement(labels, {a: 1}) for a in range(n)]

    w = None
    for c in range(D.rank):
        for a in range(n):
            for b in range(n):
                lhs = inner_hom_elements(m, act_left(m, c, basis[a]), basis[b])
                rhs = multiply(D, RingElement(D, {c: 1}), inner_hom_left(m, a, b))
                if lhs != rhs:
                    w = (D.labels[c], labels[a], labels[b])
                    break
            if w:
                break
        if w:
            break
    rep.add("linearity <c|>m, n> = c <m, n>", w is None, w)

    w = next(((labels[a], labels[b]) for a in range(n) for b in range(n)
              if star(D, inner_hom_left(m, a, b)) != inner_hom_left(m, b, a)), None)
    rep.add("hermitian star(<m, n>) = <n, m>", w is None, w)

    w = next((labels[a] for a in range(n) if inner_hom_left(m, a, a).coefficient(D.unit) < 1), None)
    rep.add("non-degenerate unit coefficient of <m, m> >= 1", w is None, w)

    w = None
    for c in range(C.rank):
        for a in range(n):
            for b in range(n):
                lhs = inner_hom_elements(m, act_right(m, c, basis[a]), basis[b])
                rhs = inner_hom_elements(m, basis[a], act_right(m, C.dual[c], basis[b]))
                if lhs != rhs:
                    w = (C.labels[c], labels[a], labels[b])
                    break
            if w:
                break
        if w:
            break
    rep.add("bimodule <m <| c, n> = <m, n <| c*>", w is None, w)
    return rep


# --- Rieffel induction ----------------------------------------------------

def _check_composable(M: BimoduleNim, N: BimoduleNim):
    if M.right_ring != N.left_ring:
        raise RingMismatch("the right ring of M must equal the left ring of N")


def rieffel_pairing(M: BimoduleNim, N: BimoduleNim, t1: FormalTensor, t2: FormalTensor) -> RingElement:
    """Induced pairing ``<m |x| n, m' |x| n'> = < m <| <n, n'>, m' >`` in M's left ring."""
    _check_composable(M, N)
    out = M.left_ring.zero()
    for c1, m1, n1 in t1.terms:
        for c2, m2, n2 in t2.terms:
            mid = inner_hom_left(N, n1, n2)
            moved = act_right_by(M, ModuleElement(M.module_labels, {m1: 1}), mid)
            val = inner_hom_elements(M, moved, ModuleElement(M.module_labels, {m2: 1}))
            out = out + val.scale(c1 * c2)
    return out


def rieffel_balanced_check(M: BimoduleNim, N: BimoduleNim) -> Report:
    """Balancing, first-slot linearity and hermiticity of the induced pairing."""
    _check_composable(M, N)
    rep = Report("rieffel_balanced_check")
    C, D = M.right_ring, M.left_ring
    pairs = [(a, b) for a in range(M.size) for b in range(N.size)]
    targets = [FormalTensor(((Fraction(1), a, b),)) for a, b in pairs]

    def expand(lhs_m: ModuleElement, lhs_n: ModuleElement) -> FormalTensor:
        return FormalTensor(tuple((u * v, a, b) for a, u in lhs_m.coeffs.items()
                                  for b, v in lhs_n.coeffs.items()))

    w = None
    for c in range(C.rank):
        for a, b in pairs:
            ma = ModuleElement(M.module_labels, {a: 1})
            nb = ModuleElement(N.module_labels, {b: 1})
            left = expand(act_right(M, c, ma), nb)
            right = expand(ma, act_left(N, c, nb))
            for t in targets:
                if rieffel_pairing(M, N, left, t) != rieffel_pairing(M, N, right, t):
                    w = (C.labels[c], M.module_labels[a], N.module_labels[b],
                         M.module_labels[t.terms[0][1]], N.module_labels[t.terms[0][2]])
                    break
            if w:
                break
        if w:
            break
    rep.add("balanced (m <| c) |x| n ~ m |x| (c |> n)", w is None, w)

    w = None
    for d in range(D.rank):
        for a, b in pairs:
            ma = ModuleElement(M.module_labels, {a: 1})
            nb = ModuleElement(N.module_labels, {b: 1})
            moved = expand(act_left(M, d, ma), nb)
            for t in targets:
                lhs = rieffel_pairing(M, N, moved, t)
                rhs = multiply(D, RingElement(D, {d: 1}), rieffel_pairing(M, N, expand(ma, nb), t))
                if lhs != rhs:
                    w = (D.labels[d], M.module_labels[a], N.module_labels[b])
                    break
            if w:
                break
        if w:
            break
    rep.add("linear in the first slot", w is None, w)

    w = None
    for s in targets:
        for t in targets:
            if star(D, rieffel_pairing(M, N, s, t)) != rieffel_pairing(M, N, t, s):
                w = (s.terms[0][1:], t.terms[0][1:])
                break
        if w:
            break
    rep.add("hermitian", w is None, w)
    return rep


# --- duals, Serre, snake --------------------------------------------------

def dual_nimrep(m: BimoduleNim, side: str = "right") -> BimoduleNim:
    """Dual bimodule over (C, D) on the same labels.

    Objects of the dual are the opposite category, so Hom dimensions are
    transposed; the left C-action comes from the right action twisted by the
    duality of C, giving ``L#(c) = R(c)^T`` and ``R#(d) = L(d)^T``.  At the
    level of classes left and right duals coincide, because ``*c`` and ``c*``
    have the same class; ``side`` is accepted for symmetry with the
    categorical construction.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    C, D = m.right_ring, m.left_ring
    L = np.transpose(m.right.matrices, (0, 2, 1))
    R = np.transpose(m.left.matrices, (0, 2, 1))
    left = build_nimrep(C, m.module_labels, L, side="left")
    right = build_nimrep(D, m.module_labels, R, side="right")
    return build_bimodule(left, right)


def serre_permutation(m: BimoduleNim, max_labels: int = DEFAULT_MAX_SERRE_LABELS) -> tuple[int, ...]:
    """The unique permutation with ``star(<m_t, m_a>) = <m_a, m_sigma(t)>`` for all a, t.

    Found by backtracking over all permutations; raises if none or several exist.
    """
    n = m.size
    if n > max_labels:
        raise SizeGuardExceeded(f"{n} labels exceeds the Serre search guard of {max_labels}")
    D = m.left_ring
    # candidate images for each t, checked column by column
    cand = []
    for t in range(n):
        ok = [s for s in range(n)
              if all(star(D, inner_hom_left(m, t, a)) == inner_hom_left(m, a, s) for a in range(n))]
        cand.append(ok)
    found: list[tuple[int, ...]] = []

    def extend(t: int, used: set, perm: list):
        if len(found) > 1:
            return
        if t == n:
            found.append(tuple(perm))
            return
        for s in cand[t]:
            if s not in used:
                used.add(s)
                perm.append(s)
                extend(t + 1, used, perm)
                perm.pop()
                used.discard(s)

    extend(0, set(), [])
    if not found:
        raise NoSerrePermutation("no permutation solves the Serre system")
    if len(found) > 1:
        raise AmbiguousSerrePermutation("several permutations solve the Serre system",
                                        witness=found[:2])
    return found[0]


def snake_check(m: BimoduleNim) -> Report:
    """Both triangulator composites must be the identity on Gr(M).

    The coevaluation class is ``sum_i m_i |x| m_i``; pairing it back against
    ``m`` with the evaluation gives ``Phi[i, b]`` = unit coefficient of
    ``<m_i, m_b>`` (first orientation) or of ``<m_b, m_i>`` (second).
    """
    rep = Report("snake_check")
    n = m.size
    D, C = m.left_ring, m.right_ring
    phi1 = np.array([[int(inner_hom_left(m, i, b).coefficient(D.unit)) for b in range(n)]
                     for i in range(n)], dtype=np.int64)
    phi2 = np.array([[int(inner_hom_right(m, b, i).coefficient(C.unit)) for b in range(n)]
                     for i in range(n)], dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    rep.add("left triangulator Phi = id", np.array_equal(phi1, eye), phi1.tolist())
    rep.add("right triangulator Phi = id", np.array_equal(phi2, eye), phi2.tolist())
    return rep


def regular_nimreps_for_group_ring(ring: FusionRing) -> BimoduleNim:
    return unit_bimodule(ring)


def labels_of(m: BimoduleNim) -> list[str]:
    return list(m.module_labels)


def all_label_pairs(m: BimoduleNim):
    return itertools.product(m.module_labels, repeat=2)
