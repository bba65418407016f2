"""Graded vector spaces over a finite group and their rigid structure.

Conventions, used everywhere in the package:

* a graded space ``X`` has an ordered basis ``x_i`` of grades ``g_i``;
  ``X*`` and ``*X`` have dual bases of grades ``g_i^-1`` in the same order,
  and ``X**`` is identified with ``X`` index by index;
* ``ev_X(x*_i (x) x_j) = delta_ij`` and ``coev_X(1) = sum_i x_i (x) x*_i``;
  likewise ``ev'_X: X (x) *X -> 1`` and ``coev'_X: 1 -> *X (x) X``;
* the pivotal structure of a character ``kappa`` is ``a_X = diag kappa(g_i)``.

All kappa-dependence sits in the pivotal insertion; duality maps are the
bare basis pairings.  Tensor products index ``(i, k)`` as ``i * dim + k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Sequence

from .errors import GradeViolation, LabelUnknown
from .groups import FiniteGroup
from .linalg import Matrix


class PivotalCharacter(Protocol):
    def value(self, g: int): ...


@dataclass(frozen=True)
class GradedVectorSpace:
    group: FiniteGroup
    ids: tuple[str, ...]
    grades: tuple[int, ...]

    def __post_init__(self):
        if len(self.ids) != len(self.grades):
            raise ValueError("ids and grades must have equal length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("basis ids must be distinct")
        for gr in self.grades:
            if not 0 <= gr < self.group.order:
                raise GradeViolation(f"grade {gr} is not a group element")

    @property
    def dim(self) -> int:
        return len(self.ids)

    def index(self, basis_id) -> int:
        if isinstance(basis_id, int):
            return basis_id
        try:
            return self.ids.index(basis_id)
        except ValueError:
            raise LabelUnknown(f"unknown basis vector {basis_id!r}") from None

    def tensor(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        g = self.group
        return GradedVectorSpace(
            g, tuple(f"{a}⊗{b}" for a in self.ids for b in other.ids),
            tuple(g.mul(x, y) for x in self.grades for y in other.grades))

    def right_dual(self) -> "GradedVectorSpace":
        return GradedVectorSpace(self.group, tuple(f"{a}*" for a in self.ids),
                                 tuple(self.group.inv(x) for x in self.grades))

    def left_dual(self) -> "GradedVectorSpace":
        return GradedVectorSpace(self.group, tuple(f"*{a}" for a in self.ids),
                                 tuple(self.group.inv(x) for x in self.grades))

    def grade_class(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for gr in self.grades:
            out[gr] = out.get(gr, 0) + 1
        return out


def unit_space(group: FiniteGroup) -> GradedVectorSpace:
    return GradedVectorSpace(group, ("1",), (group.identity,))


def simple_space(group: FiniteGroup, g: int) -> GradedVectorSpace:
    return GradedVectorSpace(group, (f"δ_{group.names[g]}",), (g,))


def identity(x: GradedVectorSpace | int) -> Matrix:
    n = x if isinstance(x, int) else x.dim
    return Matrix.identity(n)


def tensor(*maps: Matrix) -> Matrix:
    out = maps[0]
    for f in maps[1:]:
        out = out.kron(f)
    return out


def compose(*maps: Matrix) -> Matrix:
    """``compose(f, g, h) = f o g o h``."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = f @ out
    return out


def ev(x: GradedVectorSpace) -> Matrix:
    """``X* (x) X -> 1``."""
    n = x.dim
    return Matrix(1, n * n, [{i * n + i: Fraction(1) for i in range(n)}])


def coev(x: GradedVectorSpace) -> Matrix:
    """``1 -> X (x) X*``."""
    return ev(x).T


def ev_prime(x: GradedVectorSpace) -> Matrix:
    """``X (x) *X -> 1``."""
    return ev(x)


def coev_prime(x: GradedVectorSpace) -> Matrix:
    """``1 -> *X (x) X``."""
    return ev(x).T


def pivotal(x: GradedVectorSpace, kappa: PivotalCharacter) -> Matrix:
    """``a_X: X -> X**``."""
    return Matrix.diagonal([kappa.value(g) for g in x.grades])


def pivotal_inverse(x: GradedVectorSpace, kappa: PivotalCharacter) -> Matrix:
    return Matrix.diagonal([1 / kappa.value(g) for g in x.grades])


def right_dual_morphism(f: Matrix, x: GradedVectorSpace, y: GradedVectorSpace) -> Matrix:
    """``f*: Y* -> X*`` as ``(ev_Y (x) 1)(1 (x) f (x) 1)(1 (x) coev_X)``."""
    return compose(tensor(ev(y), identity(x)),
                   tensor(identity(y), f, identity(x)),
                   tensor(identity(y), coev(x)))


def left_dual_morphism(f: Matrix, x: GradedVectorSpace, y: GradedVectorSpace) -> Matrix:
    """``*f: *Y -> *X`` as ``(1 (x) ev'_Y)(1 (x) f (x) 1)(coev'_X (x) 1)``."""
    return compose(tensor(identity(x), ev_prime(y)),
                   tensor(identity(x), f, identity(y)),
                   tensor(coev_prime(x), identity(y)))


def right_trace(f: Matrix, x: GradedVectorSpace, kappa: PivotalCharacter):
    """``ev_{X*} o ((a_X f) (x) 1_{X*}) o coev_X``."""
    out = compose(ev(x.right_dual()),
                  tensor(pivotal(x, kappa) @ f, identity(x)),
                  coev(x))
    return out[0, 0]


def left_trace(f: Matrix, x: GradedVectorSpace, kappa: PivotalCharacter):
    """``ev_X o (1_{X*} (x) (f a_X^-1)) o coev_{X*}``."""
    out = compose(ev(x),
                  tensor(identity(x), f @ pivotal_inverse(x, kappa)),
                  coev(x.right_dual()))
    return out[0, 0]


def homogeneity_violation(f: Matrix, src: GradedVectorSpace, tgt: GradedVectorSpace):
    """First ``(row, col)`` where ``f`` maps between different grades, or None."""
    for i, j, _ in f.entries():
        if src.grades[j] != tgt.grades[i]:
            return i, j
    return None


def tensor_space(*spaces: GradedVectorSpace) -> GradedVectorSpace:
    out = spaces[0]
    for s in spaces[1:]:
        out = out.tensor(s)
    return out

