"""Categorified computations in Vect[G].

Pivotal structures are characters ``kappa: G -> mu_m`` stored as exponents.
Module categories are coset sets ``H\\G`` (right cosets) with the left action
``g |> Hx = H x g^-1``; the coset of the identity always comes first.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels, vectg
from .cyclotomic import CyclotomicScalar
from .errors import CharacterViolation, Infeasible, LabelUnknown, ValidationError
from .fusion_ring import FusionRing, RingElement, pointed_ring, trivial_ring
from .gr_modules import BimoduleNim, build_bimodule, build_nimrep, rieffel_pairing, FormalTensor
from .groups import FiniteGroup
from .linalg import Matrix, nullity


# --- characters -----------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """Homomorphism ``G -> mu_m``; ``exponents[g]`` is the power of ``zeta_m``."""

    group: FiniteGroup
    root_order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        g, m = self.group, self.root_order
        if m < 1:
            raise CharacterViolation("root order must be positive")
        if len(self.exponents) != g.order:
            raise CharacterViolation("one exponent per group element is required")
        ex = tuple(int(e) % m for e in self.exponents)
        object.__setattr__(self, "exponents", ex)
        if ex[g.identity] != 0:
            raise CharacterViolation("identity must map to 1", witness=(g.names[g.identity],))
        for a in range(g.order):
            for b in range(g.order):
                if ex[g.mul(a, b)] != (ex[a] + ex[b]) % m:
                    raise CharacterViolation(
                        f"not multiplicative at ({g.names[a]}, {g.names[b]})",
                        witness=(g.names[a], g.names[b]))

    def value(self, g: int) -> CyclotomicScalar:
        return CyclotomicScalar.zeta(self.root_order, self.exponents[g])

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def restricted_exponents(self, subset: Iterable[int]) -> dict[int, int]:
        return {x: self.exponents[x] for x in subset}

    def to_dict(self) -> dict:
        return {"m": self.root_order,
                "exponents": {self.group.names[i]: e for i, e in enumerate(self.exponents)}}

    def __str__(self) -> str:
        body = ", ".join(f"{self.group.names[i]}:{e}" for i, e in enumerate(self.exponents) if e)
        return f"κ[m={self.root_order}]({body or 'trivial'})"


def character_from_exponents(group: FiniteGroup, m: int, exponents: Mapping) -> Character:
    """Build from a partial map on element names; missing elements are filled in
    by multiplicativity from the given ones (which must generate)."""
    known: dict[int, int] = {group.identity: 0}
    for name, e in exponents.items():
        known[group.index(name)] = int(e) % m
    queue = deque(known)
    seeds = list(known.items())
    while queue:
        x = queue.popleft()
        for s, es in seeds:
            y = group.mul(x, s)
            if y not in known:
                known[y] = (known[x] + es) % m
                queue.append(y)
    if len(known) != group.order:
        raise CharacterViolation("given exponents do not determine the character")
    return Character(group, m, tuple(known[i] for i in range(group.order)))


def trivial_character(group: FiniteGroup, m: int = 1) -> Character:
    return Character(group, m, (0,) * group.order)


def enumerate_characters(group: FiniteGroup, m: int) -> list[Character]:
    """All homomorphisms ``G -> Z/m``, by search over values on generators."""
    gens = group.generators()
    found = []
    for vals in itertools.product(range(m), repeat=len(gens)):
        ex: dict[int, int] = {group.identity: 0}
        queue = deque([group.identity])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for s, v in zip(gens, vals):
                y = group.mul(x, s)
                e = (ex[x] + v) % m
                if y not in ex:
                    ex[y] = e
                    queue.append(y)
                elif ex[y] != e:
                    ok = False
                    break
        if not ok:
            continue
        try:
            found.append(Character(group, m, tuple(ex[i] for i in range(group.order))))
        except CharacterViolation:
            continue
    return found


def sign_character(group: FiniteGroup) -> Character:
    """The unique nontrivial character into mu_2 (raises unless exactly one exists)."""
    nontrivial = [k for k in enumerate_characters(group, 2) if not k.is_trivial()]
    if len(nontrivial) != 1:
        raise CharacterViolation(f"{group.name} has {len(nontrivial)} nontrivial mu_2 characters")
    return nontrivial[0]


# --- traces and pivotal conjugation ---------------------------------------

def trace_of_simple(k: Character, g, side: str = "left", scalar=1) -> CyclotomicScalar:
    """Left or right trace of ``scalar * id`` on the simple ``delta_g``.

    Evaluated as the explicit ev/coev composite of 1x1 graded matrices.
    """
    group = k.group
    gi = group.index(g)
    x = vectg.simple_space(group, gi)
    f = Matrix.identity(1).scale(scalar)
    if side == "left":
        val = vectg.left_trace(f, x, k)
    elif side == "right":
        val = vectg.right_trace(f, x, k)
    else:
        raise ValueError("side must be 'left' or 'right'")
    if not isinstance(val, CyclotomicScalar):
        val = CyclotomicScalar.rational(val, k.root_order)
    return val


def conjugate_pivotal(k: Character) -> Character:
    """The character whose right traces are the left traces of ``k``."""
    conj = Character(k.group, k.root_order, tuple(-e for e in k.exponents))
    for g in range(k.group.order):
        if trace_of_simple(conj, g, "right") != trace_of_simple(k, g, "left"):
            raise ValidationError("conjugate pivotal trace identity fails",
                                  witness=k.group.names[g])  # pragma: no cover
    return conj


def spherical_check(k: Character) -> bool:
    return all(trace_of_simple(k, g, "left") == trace_of_simple(k, g, "right")
               for g in range(k.group.order))


# --- coset modules ----------------------------------------------------------

class CosetModule:
    """Right cosets ``H\\G`` with ``g |> Hx = H x g^-1``."""

    def __init__(self, group: FiniteGroup, subgroup: Iterable, name: str | None = None):
        self.group = group
        self.subgroup = group.subgroup(subgroup)
        self.name = name or "H"
        seen: set[int] = set()
        cosets = []
        for x in sorted(range(group.order), key=lambda t: (t != group.identity, t)):
            if x in seen:
                continue
            c = frozenset(group.mul(h, x) for h in self.subgroup)
            seen |= c
            cosets.append(c)
        self.cosets = tuple(cosets)
        self.representatives = tuple(min(c, key=lambda t: (t != group.identity, t)) for c in cosets)
        where = {}
        for i, c in enumerate(cosets):
            for x in c:
                where[x] = i
        self._where = where
        n = len(cosets)
        act = np.zeros((group.order, n), dtype=np.int64)
        for g in range(group.order):
            ginv = group.inv(g)
            for i, rep in enumerate(self.representatives):
                act[g, i] = where[group.mul(rep, ginv)]
        act.setflags(write=False)
        self.action = act
        self.labels = tuple(self.name if rep == group.identity else f"{self.name}{group.names[rep]}"
                            for rep in self.representatives)

    @property
    def size(self) -> int:
        return len(self.cosets)

    def __repr__(self) -> str:
        return f"CosetModule({self.group.name}, {self.group.format_subset(self.subgroup)})"

    def coset_of(self, x: int) -> int:
        return self._where[x]

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.size:
                raise LabelUnknown(f"coset index {label} out of range")
            return int(label)
        if label in self.labels:
            return self.labels.index(label)
        raise LabelUnknown(f"unknown coset {label!r}")

    def act(self, g: int, c: int) -> int:
        return int(self.action[g, c])

    def right_act(self, c: int, g: int) -> int:
        """``Hx <| g = H x g``."""
        return self._where[self.group.mul(self.representatives[c], g)]

    def hom_dimension(self, a: int, g: int, b: int) -> int:
        """dim Hom(a, delta_g |> b) by explicit coset comparison."""
        return int(self.cosets[a] == frozenset(self.group.mul(h, self.group.mul(self.representatives[b], self.group.inv(g)))
                                                for h in self.subgroup))


def coset_inner_hom(m: CosetModule, a, b) -> RingElement:
    """``<a, b> = sum of delta_g over g with g |> b = a``."""
    i, j = m.index(a), m.index(b)
    ring = pointed_ring(m.group)
    return RingElement(ring, {g: 1 for g in range(m.group.order) if m.act(g, j) == i})


def coset_to_nimrep(m: CosetModule) -> BimoduleNim:
    """Permutation matrices ``L(delta_g)[a, b] = [g |> b == a]``; right action trivial."""
    ring = pointed_ring(m.group)
    n = m.size
    mats = np.zeros((m.group.order, n, n), dtype=np.int64)
    for g in range(m.group.order):
        for b in range(n):
            mats[g, m.act(g, b), b] = 1
    return build_bimodule(build_nimrep(ring, m.labels, mats, side="left"))


def coset_right_nimrep(m: CosetModule) -> BimoduleNim:
    """The same cosets as a right module by ``Hx <| g = Hxg``; left ring trivial."""
    ring = pointed_ring(m.group)
    n = m.size
    mats = np.zeros((m.group.order, n, n), dtype=np.int64)
    for g in range(m.group.order):
        for b in range(n):
            mats[g, m.right_act(b, g), b] = 1
    triv = trivial_ring()
    left = build_nimrep(triv, m.labels, np.eye(n, dtype=np.int64)[None], side="left")
    right = build_nimrep(ring, m.labels, mats, side="right")
    return build_bimodule(left, right)


# --- module traces ------------------------------------------------------------

def twist_exponents(k: Character) -> list[int]:
    """Exponent of ``chi(g)``, the factor in ``theta(g |> c) = chi(g) theta(c)``.

    ``chi(g)`` is the left dimension of ``delta_g``; it is read off
    :func:`trace_of_simple` rather than assumed.
    """
    m = k.root_order
    out = []
    for g in range(k.group.order):
        val = trace_of_simple(k, g, "left")
        e = next(e for e in range(m) if CyclotomicScalar.zeta(m, e) == val)
        out.append(e)
    return out


def module_trace_exists(group: FiniteGroup, subgroup: Iterable, k: Character) -> bool:
    """Closed-form criterion: kappa is trivial on the subgroup."""
    h = group.subgroup(subgroup)
    return all(k.exponents[x] == 0 for x in h)


@dataclass(frozen=True)
class ModuleTrace:
    module: CosetModule
    character: Character
    exponents: tuple[int, ...]

    def values(self) -> dict[str, CyclotomicScalar]:
        m = self.character.root_order
        return {lab: CyclotomicScalar.zeta(m, e) for lab, e in zip(self.module.labels, self.exponents)}


def build_module_trace(group: FiniteGroup, subgroup: Iterable, k: Character) -> ModuleTrace:
    """Solve ``theta(g |> c) = chi(g) theta(c)`` by propagation from ``theta(H) = 1``.

    Raises :class:`Infeasible` carrying a closed walk whose twist product is not 1.
    """
    mod = CosetModule(group, subgroup)
    m = k.root_order
    chi = twist_exponents(k)
    theta: dict[int, int] = {0: 0}
    parent: dict[int, tuple[int, int] | None] = {0: None}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(group.order):
            d = mod.act(g, c)
            e = (theta[c] + chi[g]) % m
            if d not in theta:
                theta[d] = e
                parent[d] = (c, g)
                queue.append(d)
            elif theta[d] != e:
                raise Infeasible(
                    f"no module trace on {mod!r} for {k}",
                    witness=_cycle_witness(mod, parent, c, g, d, (e - theta[d]) % m, m))
    return ModuleTrace(mod, k, tuple(theta[i] for i in range(mod.size)))


def _cycle_witness(mod, parent, c, g, d, defect, m) -> dict:
    def path(x):
        steps = []
        while parent[x] is not None:
            p, h = parent[x]
            steps.append((mod.labels[p], mod.group.names[h], mod.labels[x]))
            x = p
        return steps[::-1]

    walk = path(c) + [(mod.labels[c], mod.group.names[g], mod.labels[d])]
    back = [(b, f"{h}^-1", a) for a, h, b in reversed(path(d))]
    return {"cycle": walk + back, "product": str(CyclotomicScalar.zeta(m, defect))}


def enumerate_module_traces(group: FiniteGroup, subgroup: Iterable, k: Character,
                            normalize: bool = True) -> tuple[int, list[int]]:
    """Brute-force count of exponent assignments solving the trace constraints."""
    mod = CosetModule(group, subgroup)
    chi = np.array(twist_exponents(k), dtype=np.int64)
    return _kernels.enumerate_theta(mod.action, chi, k.root_order, normalize=normalize)


def trace_solution_nullity(group: FiniteGroup, subgroup: Iterable, k: Character) -> int:
    """Dimension over Q(zeta_m) of the solutions of ``theta(g |> c) - chi(g) theta(c) = 0``."""
    mod = CosetModule(group, subgroup)
    rows = []
    for g in range(group.order):
        chi = trace_of_simple(k, g, "left")
        for c in range(mod.size):
            d = mod.act(g, c)
            row: dict = {}
            row[d] = row.get(d, 0) + 1
            row[c] = row.get(c, 0) - chi
            rows.append({j: v for j, v in row.items() if v})
    return nullity(rows, mod.size)


# --- double cosets and induced pairings -------------------------------------

@dataclass
class DoubleCosetModule:
    """Basis of ``Vect[H\\G] (x)_{Vect[G]} Vect[K\\G]`` realised by double cosets."""

    group: FiniteGroup
    left_subgroup: frozenset
    right_subgroup: frozenset
    basis: list[frozenset]
    representatives: list[int]
    descent: dict[tuple[int, int], int]
    rieffel_table: list[list[int]]
    hom_table: list[list[int]]
    well_defined: bool
    hom_rank: int
    checks: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def pairings_agree(self) -> bool:
        return self.rieffel_table == self.hom_table

    def basis_names(self) -> list[str]:
        g = self.group
        return [f"H{g.names[r]}K" if r != g.identity else "HK" for r in self.representatives]


def double_coset_tensor(group: FiniteGroup, h: Iterable, k: Iterable) -> DoubleCosetModule:
    """Double-coset model of the relative tensor product of coset modules.

    ``M = H\\G`` acted on from the right, ``N = K\\G`` from the left; the pure
    tensor ``Hx |x| Ky`` descends to ``H x y^-1 K``.  The induced pairing is
    computed from the Gr-level Rieffel formula on every pair of pure tensors,
    checked to depend only on the descended classes, and compared with Hom
    dimensions between free ``(kH, kK)``-bimodules.
    """
    from . import algebra  # categorified layer

    H = group.subgroup(h)
    K = group.subgroup(k)
    labels = _kernels.double_coset_labels(group.table, group.mask(H), group.mask(K))
    nd = max(labels) + 1
    reps = [labels.index(i) for i in range(nd)]
    basis = [frozenset(x for x in range(group.order) if labels[x] == i) for i in range(nd)]

    Mc = CosetModule(group, H, name="H")
    Nc = CosetModule(group, K, name="K")
    M = coset_right_nimrep(Mc)
    N = coset_to_nimrep(Nc)
    descent = {}
    for a, x in enumerate(Mc.representatives):
        for b, y in enumerate(Nc.representatives):
            descent[(a, b)] = labels[group.mul(x, group.inv(y))]

    # induced pairing on every pair of pure tensors
    pairs = sorted(descent)
    table: dict[tuple[int, int], set] = {}
    for s in pairs:
        ts = FormalTensor(((Fraction(1), s[0], s[1]),))
        for t in pairs:
            tt = FormalTensor(((Fraction(1), t[0], t[1]),))
            val = rieffel_pairing(M, N, ts, tt).coefficient(0)
            table.setdefault((descent[s], descent[t]), set()).add(int(val))
    well_defined = all(len(v) == 1 for v in table.values())
    rieffel = [[min(table[(i, j)]) for j in range(nd)] for i in range(nd)]

    A = algebra.subgroup_algebra(group, H)
    B = algebra.subgroup_algebra(group, K)
    free = {g: algebra.free_bimodule(A, B, g) for g in range(group.order)}
    hom = [[algebra.hom_dimension(free[reps[i]], free[reps[j]]) for j in range(nd)] for i in range(nd)]
    gram = Matrix.from_dense([[algebra.hom_dimension(free[x], free[y]) for y in range(group.order)]
                              for x in range(group.order)])
    return DoubleCosetModule(group, H, K, basis, reps, descent, rieffel, hom,
                             well_defined, gram.rank())


def regular_coset_module(group: FiniteGroup) -> CosetModule:
    return CosetModule(group, [group.identity], name="e")


def all_coset_modules(group: FiniteGroup) -> list[CosetModule]:
    return [CosetModule(group, h, name=f"H{i}") for i, h in enumerate(group.all_subgroups)]


def subgroup_from_names(group: FiniteGroup, names: Sequence[str]) -> frozenset:
    return group.subgroup(names)
