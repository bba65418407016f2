"""Finite groups given by multiplication tables.

Elements are indices ``0..n-1``; ``names`` gives display labels.  Subgroups
are ``frozenset`` of element indices.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import GroupAxiomViolation, LabelUnknown, NotASubgroup


class FiniteGroup:
    """A finite group with a verified Cayley table."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 name: str = "G"):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupAxiomViolation("table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupAxiomViolation("table entries out of range")
        ident = [e for e in range(n)
                 if np.array_equal(table[e], np.arange(n)) and np.array_equal(table[:, e], np.arange(n))]
        if not ident:
            raise GroupAxiomViolation("no identity element")
        e = ident[0]
        inverse = []
        for a in range(n):
            inv = np.flatnonzero(table[a] == e)
            if len(inv) != 1 or table[inv[0], a] != e:
                raise GroupAxiomViolation(f"element {a} has no two-sided inverse", witness=(a,))
            inverse.append(int(inv[0]))
        bad = _kernels.group_associativity_violation(table)
        if bad is not None:
            raise GroupAxiomViolation(f"associativity fails at {bad}", witness=bad)
        if names is None:
            names = [str(i) for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise GroupAxiomViolation("names must be distinct and match the order")
        table.setflags(write=False)
        self.table = table
        self.names = tuple(names)
        self.identity = e
        self.inverse = tuple(inverse)
        self.name = name
        self._index = {nm: i for i, nm in enumerate(self.names)}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.order:
                raise LabelUnknown(f"element index {label} out of range")
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise LabelUnknown(f"unknown group element {label!r}") from None

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    # -- subgroups ---------------------------------------------------------
    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = list(elems)
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.mul(a, self.inverse[b]) in s for a in s for b in s)

    def subgroup(self, elements: Iterable) -> frozenset[int]:
        """Validate and return a subgroup given by element names or indices."""
        s = frozenset(self.index(x) for x in elements)
        if not self.is_subgroup(s):
            raise NotASubgroup(f"{sorted(self.names[i] for i in s)} is not a subgroup of {self.name}",
                               witness=sorted(s))
        return s

    @cached_property
    def all_subgroups(self) -> tuple[frozenset[int], ...]:
        """Every subgroup, by iterated joins of cyclic subgroups."""
        subs = {self.closure([a]) for a in range(self.order)}
        while True:
            new = {self.closure(a | b) for a, b in itertools.combinations(subs, 2)} - subs
            if not new:
                break
            subs |= new
        return tuple(sorted(subs, key=lambda s: (len(s), sorted(s))))

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily."""
        gens: list[int] = []
        span = self.closure([])
        for a in sorted(range(self.order), key=lambda x: -self.element_order(x)):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
            if len(span) == self.order:
                break
        return gens

    def subgroup_table(self, h: frozenset[int]) -> tuple["FiniteGroup", list[int]]:
        """The subgroup as a group in its own right, plus the embedding."""
        elems = sorted(h, key=lambda x: (x != self.identity, x))
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[self.mul(a, b)] for b in elems] for a in elems]
        return FiniteGroup(table, [self.names[x] for x in elems], name=f"{self.name}|sub"), elems

    def mask(self, subset: Iterable[int]) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[list(subset)] = True
        return m

    def format_subset(self, subset: Iterable[int]) -> str:
        return "{" + ", ".join(self.names[i] for i in sorted(subset)) + "}"


# --- builtin groups -------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, names, name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"], name="1")


def _cycle_name(perm: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        cycles.append("(" + "".join(str(c) for c in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with composition ``(gh)(x) = g(h(x))`` and cycle-notation names."""
    perms = sorted(itertools.permutations(range(n)),
                   key=lambda p: (p != tuple(range(n)), _perm_sort_key(p)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(g[h[x]] for x in range(n))] for h in perms] for g in perms]
    return FiniteGroup(table, [_cycle_name(p) for p in perms], name=f"S{n}")


def _perm_sort_key(p):
    # transpositions before 3-cycles etc., then lexicographic on cycle names
    moved = sum(1 for i, x in enumerate(p) if i != x)
    return moved, _cycle_name(p)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: elements ``r^k`` and ``s r^k``."""
    elems = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]

    def mul(x, y):
        (s1, k1), (s2, k2) = x, y
        # r^k s = s r^-k
        if s2 == 0:
            return s1, (k1 + k2) % n
        return (s1 + 1) % 2, (k2 - k1) % n

    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[mul(a, b)] for b in elems] for a in elems]

    def name(x):
        s, k = x
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        if s == 0:
            return r or "e"
        return "s" + r
    return FiniteGroup(table, [name(x) for x in elems], name=f"D{n}")


BUILTIN_GROUPS = {
    "trivial": trivial_group,
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
}


def builtin_group(name: str) -> FiniteGroup:
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise LabelUnknown(f"no builtin group named {name!r}")
