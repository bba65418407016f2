"""Fusion rings: based rings with non-negative structure constants and duality.

Coefficients are stored sparsely as ``(i, j, k) -> N_ij^k`` and materialized
densely only for the exhaustive checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import (AssociativityViolation, ConvergenceFailure, DualityViolation,
                     IndexOutOfRange, LabelUnknown, ReciprocityViolation,
                     SizeGuardExceeded, UnitViolation, ValidationError)
from .groups import FiniteGroup
from .report import Report

DEFAULT_MAX_SIMPLES = 64


class FusionRing:
    """Validated fusion ring; construct through :func:`build_fusion_ring`."""

    def __init__(self, labels, unit, dual, coefficients):
        self.labels = tuple(labels)
        self.unit = unit
        self.dual = tuple(dual)
        self.coefficients = {k: v for k, v in coefficients.items() if v}
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.rank

    def __repr__(self) -> str:
        return f"FusionRing({', '.join(self.labels)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FusionRing) and self.labels == other.labels
                and self.unit == other.unit and self.dual == other.dual
                and self.coefficients == other.coefficients)

    def __hash__(self) -> int:
        return hash((self.labels, self.unit, self.dual))

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.rank:
                raise IndexOutOfRange(f"ring index {label} out of range")
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise LabelUnknown(f"unknown ring label {label!r}") from None

    def N(self, i: int, j: int, k: int) -> int:
        return self.coefficients.get((i, j, k), 0)

    @cached_property
    def dense(self) -> np.ndarray:
        n = self.rank
        arr = np.zeros((n, n, n), dtype=np.int64)
        for (i, j, k), v in self.coefficients.items():
            arr[i, j, k] = v
        arr.setflags(write=False)
        return arr

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by ``b_i``: entry ``[k, j] = N_ij^k``."""
        return self.dense[i].T.copy()

    def basis(self, label) -> "RingElement":
        return RingElement(self, {self.index(label): Fraction(1)})

    def element(self, coeffs: Mapping) -> "RingElement":
        return RingElement(self, {self.index(k): Fraction(v) for k, v in coeffs.items()})

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return RingElement(self, {self.unit: Fraction(1)})


@dataclass(frozen=True, eq=False)
class RingElement:
    """Element of Gr(C) tensor Q: a sparse map from basis index to rational."""

    ring: FusionRing
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            if not 0 <= k < self.ring.rank:
                raise IndexOutOfRange(f"index {k} outside ring of rank {self.ring.rank}")
            if v:
                clean[int(k)] = Fraction(v)
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, label) -> Fraction:
        return self.coeffs.get(self.ring.index(label), Fraction(0))

    def coefficient(self, index: int) -> Fraction:
        return self.coeffs.get(index, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return RingElement(self.ring, out)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + other.scale(-1)

    def scale(self, s) -> "RingElement":
        return RingElement(self.ring, {k: v * s for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return multiply(self.ring, self, other)
        return self.scale(other)

    __rmul__ = scale

    def is_nonnegative_integral(self) -> bool:
        return all(v >= 0 and v.denominator == 1 for v in self.coeffs.values())

    def to_dict(self) -> dict[str, str]:
        return {self.ring.labels[k]: str(v) for k, v in sorted(self.coeffs.items())}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            lab = self.ring.labels[k]
            mag = abs(v)
            body = lab if mag == 1 else f"{mag}*{lab}"
            parts.append(("-" if v < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


def build_fusion_ring(labels: Sequence[str], unit_index: int, dual: Sequence[int],
                      coefficients: Mapping[tuple[int, int, int], int],
                      max_simples: int = DEFAULT_MAX_SIMPLES) -> FusionRing:
    """Validate fusion-ring data exhaustively and return the ring.

    Checks run in order: shape, unit, duality, Frobenius reciprocity,
    associativity; the first failure raises with the offending indices.
    """
    n = len(labels)
    if n == 0:
        raise ValidationError("a fusion ring needs at least one label")
    if n > max_simples:
        raise SizeGuardExceeded(f"{n} simples exceeds the guard of {max_simples}")
    if len(set(labels)) != n:
        raise ValidationError("labels must be distinct")
    if not 0 <= unit_index < n:
        raise IndexOutOfRange("unit index out of range")
    if len(dual) != n or any(not 0 <= d < n for d in dual):
        raise IndexOutOfRange("dual must map every index into range")
    N = np.zeros((n, n, n), dtype=np.int64)
    for (i, j, k), v in coefficients.items():
        if not all(0 <= x < n for x in (i, j, k)):
            raise IndexOutOfRange(f"coefficient index {(i, j, k)} out of range", witness=(i, j, k))
        if v < 0 or int(v) != v:
            raise ValidationError(f"N_{(i, j, k)} = {v} is not a non-negative integer", witness=(i, j, k))
        N[i, j, k] = int(v)
    u = unit_index
    eye = np.eye(n, dtype=np.int64)
    for j in range(n):
        if not np.array_equal(N[u, j], eye[j]):
            raise UnitViolation(f"1 * {labels[j]} != {labels[j]}", witness=(u, j))
        if not np.array_equal(N[j, u], eye[j]):
            raise UnitViolation(f"{labels[j]} * 1 != {labels[j]}", witness=(j, u))
    for i in range(n):
        if dual[dual[i]] != i:
            raise DualityViolation(f"dual is not an involution at {labels[i]}", witness=(i, dual[i]))
        for j in range(n):
            want = 1 if j == dual[i] else 0
            if N[i, j, u] != want:
                raise DualityViolation(
                    f"N_{{{labels[i]},{labels[j]}}}^1 = {N[i, j, u]}, expected {want}", witness=(i, j))
    for i in range(n):
        di = dual[i]
        for j in range(n):
            dj = dual[j]
            for k in range(n):
                v = N[i, j, k]
                if N[di, k, j] != v or N[k, dj, i] != v:
                    raise ReciprocityViolation(
                        f"Frobenius reciprocity fails at ({labels[i]}, {labels[j]}, {labels[k]})",
                        witness=(i, j, k))
    bad = _kernels.fusion_associativity_violation(N)
    if bad is not None:
        raise AssociativityViolation(f"associativity fails at {bad}", witness=bad)
    coeffs = {(int(i), int(j), int(k)): int(N[i, j, k]) for i, j, k in np.argwhere(N)}
    return FusionRing(labels, unit_index, dual, coeffs)


def multiply(r: FusionRing, x: RingElement, y: RingElement) -> RingElement:
    """Bilinear extension of the basis products."""
    if x.ring != r or y.ring != r:
        raise IndexOutOfRange("elements do not belong to this ring")
    out: dict[int, Fraction] = {}
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = _products(r)
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            for k, v in by_pair.get((i, j), ()):
                out[k] = out.get(k, 0) + a * b * v
    return RingElement(r, out)


def _products(r: FusionRing):
    cache = r.__dict__.get("_products")
    if cache is None:
        cache = {}
        for (i, j, k), v in r.coefficients.items():
            cache.setdefault((i, j), []).append((k, v))
        r.__dict__["_products"] = cache
    return cache


def star(r: FusionRing, x: RingElement) -> RingElement:
    """Duality involution extended linearly (coefficients are rational)."""
    return RingElement(r, {r.dual[i]: v for i, v in x.coeffs.items()})


def check_star_axioms(r: FusionRing) -> Report:
    """Verify ``(xy)* = y* x*`` on basis pairs and ``x** = x`` on basis elements."""
    rep = Report("check_star_axioms")
    witness = None
    for i in range(r.rank):
        for j in range(r.rank):
            bi, bj = RingElement(r, {i: 1}), RingElement(r, {j: 1})
            if star(r, multiply(r, bi, bj)) != multiply(r, star(r, bj), star(r, bi)):
                witness = (r.labels[i], r.labels[j])
                break
        if witness:
            break
    rep.add("anti-homomorphism (xy)* = y*x*", witness is None, witness)
    inv = next((r.labels[i] for i in range(r.rank)
                if star(r, star(r, RingElement(r, {i: 1}))) != RingElement(r, {i: 1})), None)
    rep.add("involution x** = x", inv is None, inv)
    return rep


def fp_dimensions(r: FusionRing, tolerance: float = 1e-12, max_iterations: int = 10_000) -> np.ndarray:
    """Frobenius-Perron dimensions by power iteration on the total fusion matrix.

    The sum of all left-multiplication matrices contains the identity and is
    irreducible, hence primitive, so the iteration converges to its Perron
    vector.  Normalized so the unit has dimension exactly 1.
    """
    total = sum(r.left_matrix(i) for i in range(r.rank)).astype(np.float64)
    vec, _, ok = _kernels.power_iteration(total, tolerance, max_iterations)
    if not ok:
        raise ConvergenceFailure(f"power iteration did not reach {tolerance} in {max_iterations} steps")
    vec = vec / vec[r.unit]
    vec[r.unit] = 1.0
    return vec


def pointed_ring(g: FiniteGroup) -> FusionRing:
    """Grothendieck ring of Vect[G]: labels are group elements, dual is inverse."""
    coeffs = {(a, b, g.mul(a, b)): 1 for a in range(g.order) for b in range(g.order)}
    return build_fusion_ring(list(g.names), g.identity, list(g.inverse), coeffs)


def ring_from_rules(labels: Sequence[str], unit: str, dual: Mapping[str, str],
                    rules: Mapping[tuple[str, str], Mapping[str, int]]) -> FusionRing:
    """Build from label-level fusion rules ``(a, b) -> {c: N_ab^c}``."""
    pos = {lab: i for i, lab in enumerate(labels)}
    coeffs = {}
    for (a, b), out in rules.items():
        for c, v in out.items():
            coeffs[(pos[a], pos[b], pos[c])] = v
    return build_fusion_ring(labels, pos[unit], [pos[dual[lab]] for lab in labels], coeffs)


def _with_unit(labels, rules):
    full = dict(rules)
    for lab in labels:
        full[("1", lab)] = {lab: 1}
        full[(lab, "1")] = {lab: 1}
    return full


def fibonacci_ring() -> FusionRing:
    labels = ["1", "τ"]
    return ring_from_rules(labels, "1", {"1": "1", "τ": "τ"},
                           _with_unit(labels, {("τ", "τ"): {"1": 1, "τ": 1}}))


def ising_ring() -> FusionRing:
    labels = ["1", "σ", "ψ"]
    rules = {("σ", "σ"): {"1": 1, "ψ": 1}, ("σ", "ψ"): {"σ": 1},
             ("ψ", "σ"): {"σ": 1}, ("ψ", "ψ"): {"1": 1}}
    return ring_from_rules(labels, "1", {lab: lab for lab in labels}, _with_unit(labels, rules))


def trivial_ring() -> FusionRing:
    return build_fusion_ring(["1"], 0, [0], {(0, 0, 0): 1})
