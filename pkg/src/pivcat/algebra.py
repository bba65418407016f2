"""Algebra and bimodule objects in Vect[G] given by structure constants.

Maps are sparse exact matrices in the tensor-index convention of
:mod:`pivcat.vectg`: multiplication ``m: A (x) A -> A`` is a ``d x d^2``
matrix with column ``i * d + j``; a left action ``A (x) M -> M`` has column
``a * dim M + v``; a right action ``M (x) B -> M`` has column ``v * dim B + b``.
One-sided modules are bimodules whose other algebra is the unit algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import vectg
from .cyclotomic import CyclotomicScalar
from .errors import (AlgebraMismatch, GradeViolation, NotNormalized, NotSemisimpleBasis,
                     PreconditionFailed, ValidationError)
from .fusion_ring import RingElement, pointed_ring
from .groups import FiniteGroup, trivial_group
from .linalg import Echelon, Matrix, nullity, solve
from .report import Report
from .vectg import GradedVectorSpace, compose, tensor

I = Matrix.identity


# --- algebras -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    space: GradedVectorSpace
    mult: Matrix
    unit: Matrix
    name: str = "A"

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def group(self) -> FiniteGroup:
        return self.space.group

    def __eq__(self, other) -> bool:
        # basis names are labels only; structure is grades plus structure maps
        return (isinstance(other, GradedAlgebra) and self.group == other.group
                and self.space.grades == other.space.grades
                and self.mult == other.mult and self.unit == other.unit)

    def __hash__(self) -> int:
        return hash((self.group, self.space.grades))

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name}, dim={self.dim})"

    def product(self, i: int, j: int) -> dict:
        return self.mult.column(i * self.dim + j)


def algebra_from_table(space: GradedVectorSpace, products: Mapping[tuple[int, int], Mapping[int, object]],
                       unit: Mapping[int, object], name: str = "A") -> GradedAlgebra:
    d = space.dim
    cols = [dict() for _ in range(d * d)]
    for (i, j), out in products.items():
        cols[i * d + j] = {k: v for k, v in out.items() if v}
    mult = Matrix.from_columns(d, cols)
    return GradedAlgebra(space, mult, Matrix.from_columns(d, [dict(unit)]), name)


def subgroup_algebra(group: FiniteGroup, subgroup: Iterable) -> GradedAlgebra:
    """Group algebra ``kH`` with ``delta_h`` in degree ``h``; identity first."""
    h = group.subgroup(subgroup)
    elems = sorted(h, key=lambda x: (x != group.identity, x))
    pos = {x: i for i, x in enumerate(elems)}
    space = GradedVectorSpace(group, tuple(f"δ_{group.names[x]}" for x in elems), tuple(elems))
    prods = {(pos[a], pos[b]): {pos[group.mul(a, b)]: Fraction(1)} for a in elems for b in elems}
    return algebra_from_table(space, prods, {0: Fraction(1)}, name=f"k{group.format_subset(h)}")


def unit_algebra(group: FiniteGroup) -> GradedAlgebra:
    space = vectg.unit_space(group)
    return algebra_from_table(space, {(0, 0): {0: Fraction(1)}}, {0: Fraction(1)}, name="1")


def ungraded_group_algebra(group: FiniteGroup) -> GradedAlgebra:
    """``kG`` as an algebra in plain Vect (every basis vector in degree e)."""
    triv = trivial_group()
    n = group.order
    space = GradedVectorSpace(triv, tuple(f"δ_{x}" for x in group.names), (0,) * n)
    prods = {(a, b): {group.mul(a, b): Fraction(1)} for a in range(n) for b in range(n)}
    return algebra_from_table(space, prods, {group.identity: Fraction(1)}, name=f"k{group.name}")


def dual_numbers() -> GradedAlgebra:
    """``Q[t]/t^2`` in plain Vect."""
    space = GradedVectorSpace(trivial_group(), ("1", "t"), (0, 0))
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
    return algebra_from_table(space, prods, {0: 1}, name="Q[t]/t^2")


def _first_grade_violation_map(f: Matrix, src_grades: Sequence[int], tgt: GradedVectorSpace):
    for i, j, _ in f.entries():
        if src_grades[j] != tgt.grades[i]:
            return i, j
    return None


def _tensor_grades(group: FiniteGroup, *grade_lists: Sequence[int]) -> list[int]:
    out = list(grade_lists[0])
    for gl in grade_lists[1:]:
        out = [group.mul(a, b) for a in out for b in gl]
    return out


def check_algebra(a: GradedAlgebra) -> Report:
    """Grade homogeneity, associativity and unit laws as matrix identities."""
    rep = Report("check_algebra")
    g, d = a.group, a.dim
    aa = _tensor_grades(g, a.space.grades, a.space.grades)
    w = _first_grade_violation_map(a.mult, aa, a.space)
    rep.add("multiplication is grade-homogeneous", w is None,
            None if w is None else {"out": a.space.ids[w[0]],
                                    "in": (a.space.ids[w[1] // d], a.space.ids[w[1] % d])})
    w = _first_grade_violation_map(a.unit, [g.identity], a.space)
    rep.add("unit has degree e", w is None, None if w is None else a.space.ids[w[0]])
    lhs = a.mult @ tensor(a.mult, I(d))
    rhs = a.mult @ tensor(I(d), a.mult)
    w = lhs.first_difference(rhs)
    rep.add("associativity", w is None,
            None if w is None else {"out": a.space.ids[w[0]],
                                    "in": _split_index(w[1], [d, d, d], a.space.ids)})
    left = a.mult @ tensor(a.unit, I(d))
    right = a.mult @ tensor(I(d), a.unit)
    w = left.first_difference(I(d)) or right.first_difference(I(d))
    rep.add("unit laws", w is None, None if w is None else a.space.ids[w[1]])
    return rep


def _split_index(k: int, dims: Sequence[int], ids: Sequence[str] | None = None):
    out = []
    for d in reversed(dims):
        out.append(k % d)
        k //= d
    out.reverse()
    return tuple(ids[x] for x in out) if ids is not None else tuple(out)


def validate_algebra(a: GradedAlgebra) -> GradedAlgebra:
    rep = check_algebra(a)
    if not rep.ok:
        bad = rep.failures()[0]
        cls = GradeViolation if "grade" in bad.check or "degree" in bad.check else ValidationError
        raise cls(f"algebra fails: {bad.check}", witness=bad.witness)
    return a


# --- bimodules ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GradedBimodule:
    space: GradedVectorSpace
    left_algebra: GradedAlgebra
    right_algebra: GradedAlgebra
    left_action: Matrix
    right_action: Matrix
    name: str = "M"

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self) -> str:
        return f"GradedBimodule({self.name}, dim={self.dim})"


def _trivial_action(alg: GradedAlgebra, space: GradedVectorSpace, side: str) -> Matrix:
    if alg.dim != 1:
        raise ValueError("only the unit algebra acts trivially")
    return I(space.dim)


def make_bimodule(space: GradedVectorSpace, left_algebra: GradedAlgebra | None, right_algebra: GradedAlgebra | None,
                  left_action: Matrix | None = None, right_action: Matrix | None = None,
                  name: str = "M") -> GradedBimodule:
    left_algebra = left_algebra or unit_algebra(space.group)
    right_algebra = right_algebra or unit_algebra(space.group)
    if left_action is None:
        left_action = _trivial_action(left_algebra, space, "left")
    if right_action is None:
        right_action = _trivial_action(right_algebra, space, "right")
    return GradedBimodule(space, left_algebra, right_algebra, left_action, right_action, name)


def check_bimodule(x: GradedBimodule) -> Report:
    rep = Report("check_bimodule")
    A, B, d = x.left_algebra, x.right_algebra, x.dim
    g = x.space.group
    lam, rho = x.left_action, x.right_action
    w = _first_grade_violation_map(lam, _tensor_grades(g, A.space.grades, x.space.grades), x.space)
    rep.add("left action is grade-homogeneous", w is None, w)
    w = _first_grade_violation_map(rho, _tensor_grades(g, x.space.grades, B.space.grades), x.space)
    rep.add("right action is grade-homogeneous", w is None, w)
    w = (lam @ tensor(A.mult, I(d))).first_difference(lam @ tensor(I(A.dim), lam))
    rep.add("left action associative", w is None, w)
    w = (rho @ tensor(I(d), B.mult)).first_difference(rho @ tensor(rho, I(B.dim)))
    rep.add("right action associative", w is None, w)
    w = (lam @ tensor(A.unit, I(d))).first_difference(I(d))
    w2 = (rho @ tensor(I(d), B.unit)).first_difference(I(d))
    rep.add("unit acts as identity", w is None and w2 is None, w or w2)
    w = (lam @ tensor(I(A.dim), rho)).first_difference(rho @ tensor(lam, I(B.dim)))
    rep.add("left and right actions commute", w is None, w)
    return rep


def validate_bimodule(x: GradedBimodule) -> GradedBimodule:
    rep = check_bimodule(x)
    if not rep.ok:
        bad = rep.failures()[0]
        cls = GradeViolation if "grade" in bad.check else ValidationError
        raise cls(f"bimodule fails: {bad.check}", witness=bad.witness)
    return x


def regular_bimodule(a: GradedAlgebra) -> GradedBimodule:
    return GradedBimodule(a.space, a, a, a.mult, a.mult, name=a.name)


def right_regular_module(a: GradedAlgebra) -> GradedBimodule:
    return make_bimodule(a.space, None, a, right_action=a.mult, name=a.name)


def free_bimodule(a: GradedAlgebra, b: GradedAlgebra, g: int) -> GradedBimodule:
    """``A (x) delta_g (x) B`` with actions by multiplication on the outer factors."""
    group = a.group
    da, db = a.dim, b.dim
    ids, grades = [], []
    for i in range(da):
        for k in range(db):
            ids.append(f"{a.space.ids[i]}|{group.names[g]}|{b.space.ids[k]}")
            grades.append(group.mul(group.mul(a.space.grades[i], g), b.space.grades[k]))
    space = GradedVectorSpace(group, tuple(ids), tuple(grades))
    lam = tensor(a.mult, I(db))           # A (x) A (x) B -> A (x) B
    rho = tensor(I(da), b.mult)           # A (x) B (x) B -> A (x) B
    return GradedBimodule(space, a, b, lam, rho, name=f"F_{group.names[g]}")


def coset_right_module(a: GradedAlgebra, x: int) -> GradedBimodule:
    """The right ``kH``-module spanned by ``delta_{x^-1 h}``, matching the coset ``Hx``."""
    group = a.group
    xinv = group.inv(x)
    elems = list(a.space.grades)
    grades = tuple(group.mul(xinv, h) for h in elems)
    space = GradedVectorSpace(group, tuple(f"δ_{group.names[t]}" for t in grades), grades)
    pos = {t: i for i, t in enumerate(grades)}
    d = len(grades)
    cols = []
    for v in range(d):
        for b in range(a.dim):
            cols.append({pos[group.mul(grades[v], elems[b])]: Fraction(1)})
    rho = Matrix.from_columns(d, cols)
    return make_bimodule(space, None, a, right_action=rho, name=f"M_{group.names[x]}")


def shift_module(g: int, x: GradedBimodule) -> GradedBimodule:
    """``delta_g (x) x``: the same actions with every degree multiplied by ``g`` on the left."""
    group = x.space.group
    space = GradedVectorSpace(group, x.space.ids, tuple(group.mul(g, t) for t in x.space.grades))
    return GradedBimodule(space, x.left_algebra, x.right_algebra, x.left_action, x.right_action,
                          name=f"δ_{group.names[g]}⊗{x.name}")


def left_dual_module(x: GradedBimodule) -> GradedBimodule:
    """``*x`` of a right A-module, a left A-module: ``a . *e_j = sum_k rho[j, (k, a)] *e_k``."""
    A = x.right_algebra
    if x.left_algebra.dim != 1:
        raise ValueError("left duals are formed for one-sided right modules")
    d, da = x.dim, A.dim
    lam = Matrix(d, da * d)
    for j, col, v in x.right_action.entries():
        k, a = divmod(col, da)
        lam.rows[k][a * d + j] = v
    return make_bimodule(x.space.left_dual(), A, None, left_action=lam, name=f"*{x.name}")


def simple_bimodules(a: GradedAlgebra, b: GradedAlgebra, hsub: Iterable[int], ksub: Iterable[int]) -> list[GradedBimodule]:
    """Simple ``(kH, kK)``-bimodules for stabilizers ``H n gKg^-1`` that are abelian.

    For a double coset ``D = HgK`` and a character ``chi`` of ``S = H n gKg^-1``
    the simple has basis ``v_x`` (x in D) with
    ``h . v_x = chi(h_{hx}^-1 h h_x) v_{hx}`` and
    ``v_x . k = chi(h_{xk}^-1 h_x) v_{xk}``, where ``x = h_x g k_x`` is a
    fixed factorisation.
    """
    from .pointed import enumerate_characters  # shared character search

    group = a.group
    H, K = frozenset(hsub), frozenset(ksub)
    hel, kel = list(a.space.grades), list(b.space.grades)
    if frozenset(hel) != H or frozenset(kel) != K:
        raise AlgebraMismatch("algebras must be the group algebras of the given subgroups")
    hpos = {h: i for i, h in enumerate(hel)}
    kpos = {k: i for i, k in enumerate(kel)}
    out = []
    seen: set[int] = set()
    for g in sorted(range(group.order), key=lambda t: (t != group.identity, t)):
        if g in seen:
            continue
        fact: dict[int, tuple[int, int]] = {}
        for h in sorted(H, key=lambda t: (t != group.identity, t)):
            for k in sorted(K, key=lambda t: (t != group.identity, t)):
                x = group.mul(group.mul(h, g), k)
                fact.setdefault(x, (h, k))
        seen |= set(fact)
        ginv = group.inv(g)
        S = [s for s in H if group.mul(group.mul(ginv, s), g) in K]
        sgroup, emb = group.subgroup_table(frozenset(S))
        if any(sgroup.mul(p, q) != sgroup.mul(q, p) for p in range(sgroup.order) for q in range(sgroup.order)):
            raise ValidationError("simple bimodules are built only for abelian stabilizers",
                                  witness=group.format_subset(S))
        m = 1
        for p in range(sgroup.order):
            m = m * sgroup.element_order(p) // _gcd(m, sgroup.element_order(p))
        spos = {x: i for i, x in enumerate(emb)}
        xs = sorted(fact, key=lambda t: (t != g, t))
        xpos = {x: i for i, x in enumerate(xs)}
        space = GradedVectorSpace(group, tuple(f"v_{group.names[x]}" for x in xs), tuple(xs))
        n = len(xs)
        for ci, chi in enumerate(enumerate_characters(sgroup, m)):
            def val(s):
                return CyclotomicScalar.zeta(m, chi.exponents[spos[s]])
            lam = Matrix(n, len(hel) * n)
            for h in hel:
                for x in xs:
                    y = group.mul(h, x)
                    s = group.mul(group.mul(group.inv(fact[y][0]), h), fact[x][0])
                    lam.rows[xpos[y]][hpos[h] * n + xpos[x]] = val(s)
            rho = Matrix(n, n * len(kel))
            for x in xs:
                for k in kel:
                    y = group.mul(x, k)
                    s = group.mul(group.inv(fact[y][0]), fact[x][0])
                    rho.rows[xpos[y]][xpos[x] * len(kel) + kpos[k]] = val(s)
            name = f"V[{group.names[g]},{ci}]"
            out.append(validate_bimodule(GradedBimodule(space, a, b, lam, rho, name=name)))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# --- Hom spaces -------------------------------------------------------------------

def _hom_equations(x: GradedBimodule, y: GradedBimodule):
    if not (x.left_algebra == y.left_algebra and x.right_algebra == y.right_algebra):
        raise AlgebraMismatch("bimodules must share both algebras")
    if x.space.group != y.space.group:
        raise AlgebraMismatch("bimodules live over different groups")
    dx, dy = x.dim, y.dim
    var = {}
    for i in range(dy):
        for j in range(dx):
            if y.space.grades[i] == x.space.grades[j]:
                var[(i, j)] = len(var)
    rows = []
    # f(a . u) = a . f(u)
    for alg, act_x, act_y, left in ((x.left_algebra, x.left_action, y.left_action, True),
                                    (x.right_algebra, x.right_action, y.right_action, False)):
        da = alg.dim
        xcols = act_x.columns()
        ycols = act_y.columns()
        for a in range(da):
            for u in range(dx):
                cx = xcols[a * dx + u] if left else xcols[u * da + a]
                for i in range(dy):
                    row: dict = {}
                    for w, c in cx.items():
                        key = var.get((i, w))
                        if key is not None:
                            row[key] = row.get(key, 0) + c
                    for v in range(dy):
                        c = act_y[i, a * dy + v] if left else act_y[i, v * da + a]
                        if c:
                            key = var.get((v, u))
                            if key is not None:
                                row[key] = row.get(key, 0) - c
                    row = {k: val for k, val in row.items() if val}
                    if row:
                        rows.append(row)
    return rows, var


def hom_dimension(x: GradedBimodule, y: GradedBimodule) -> int:
    """Dimension of grade-preserving bimodule maps ``x -> y``."""
    rows, var = _hom_equations(x, y)
    return nullity(rows, len(var))


# --- Frobenius structures ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FrobeniusData:
    algebra: GradedAlgebra
    counit: Matrix           # 1 x d
    comult: Matrix           # d^2 x d
    pivotal: object          # pointed.Character


def frobenius_from_counit(algebra: GradedAlgebra, counit: Mapping[int, object], pivotal) -> FrobeniusData:
    """Derive the comultiplication from a nondegenerate counit.

    With ``B[i, j] = eps(e_i e_j)`` the copairing is
    ``Delta(1) = sum B^-1[i, j] e_i (x) e_j`` and ``Delta(x) = (x (x) 1) Delta(1)``.
    """
    d = algebra.dim
    eps = Matrix(1, d, [dict(counit)])
    gram = eps @ algebra.mult
    B = Matrix(d, d, [{j: gram[0, i * d + j] for j in range(d)} for i in range(d)])
    if B.rank() != d:
        raise PreconditionFailed("counit pairing is degenerate", witness={"rank": B.rank(), "dim": d})
    Binv = _inverse(B)
    copair = Matrix(d * d, 1, [{0: Binv[i, j]} if Binv[i, j] else {} for i in range(d) for j in range(d)])
    # Delta(e_k) = (m (x) 1)(e_k (x) Delta(1))
    cols = []
    for k in range(d):
        ek = Matrix(d, 1, [{0: Fraction(1)} if r == k else {} for r in range(d)])
        cols.append((tensor(algebra.mult, I(d)) @ tensor(ek, copair)).column(0))
    return FrobeniusData(algebra, eps, Matrix.from_columns(d * d, cols), pivotal)


def standard_group_frobenius(algebra: GradedAlgebra, pivotal) -> FrobeniusData:
    """``eps(delta_h) = [h = e]`` and ``Delta(delta_h) = sum_{ab=h} delta_a (x) delta_b``."""
    g = algebra.group
    e = algebra.space.grades.index(g.identity)
    return frobenius_from_counit(algebra, {e: Fraction(1)}, pivotal)


def _inverse(B: Matrix) -> Matrix:
    n = B.nrows
    cols = []
    for k in range(n):
        sol, cert = solve(B.rows, [Fraction(1) if i == k else 0 for i in range(n)], n)
        if sol is None:
            raise PreconditionFailed("matrix is singular", witness=cert)
        cols.append(sol)
    return Matrix.from_columns(n, cols)


def rescale(f: FrobeniusData, lam) -> FrobeniusData:
    """``(Delta, eps) -> (lam Delta, eps / lam)``."""
    inv = 1 / lam if isinstance(lam, CyclotomicScalar) else 1 / Fraction(lam)
    return FrobeniusData(f.algebra, f.counit.scale(inv), f.comult.scale(lam), f.pivotal)


def normalize(f: FrobeniusData) -> FrobeniusData:
    beta_a = _special_scalar(f.algebra.mult @ f.comult, f.algebra.dim)
    if beta_a is None or not beta_a:
        raise PreconditionFailed("normalization needs a special Frobenius algebra")
    return rescale(f, 1 / beta_a)


def _special_scalar(M: Matrix, d: int):
    """``beta`` if ``M = beta * id``, else None."""
    if d == 0:
        return None
    beta = M[0, 0]
    return beta if M == I(d).scale(beta) else None


@dataclass
class FrobeniusReport:
    is_frobenius: bool
    is_special: bool
    beta_1: CyclotomicScalar | None
    beta_A: CyclotomicScalar | None
    is_normalized: bool
    is_symmetric: bool
    is_separable: bool
    witnesses: dict = field(default_factory=dict)
    splitting: Matrix | None = None

    def report(self) -> Report:
        rep = Report("frobenius_verify")
        w = self.witnesses
        rep.add("Frobenius algebra", self.is_frobenius, w.get("frobenius"))
        rep.add("special", self.is_special, {"beta_1": _s(self.beta_1), "beta_A": _s(self.beta_A)})
        rep.add("normalized", self.is_normalized, _s(self.beta_A))
        rep.add("symmetric", self.is_symmetric, w.get("symmetric"))
        rep.add("separable", self.is_separable, w.get("separable"))
        return rep

    def to_dict(self) -> dict:
        return {"is_frobenius": self.is_frobenius, "is_special": self.is_special,
                "beta_1": _s(self.beta_1), "beta_A": _s(self.beta_A),
                "is_normalized": self.is_normalized, "is_symmetric": self.is_symmetric,
                "is_separable": self.is_separable,
                "witnesses": {k: v for k, v in sorted(self.witnesses.items())}}


def _s(x):
    return None if x is None else str(x)


def _as_cyclotomic(x, order: int = 1) -> CyclotomicScalar:
    return x if isinstance(x, CyclotomicScalar) else CyclotomicScalar.rational(x, order)


def symmetry_maps(f: FrobeniusData) -> tuple[Matrix, Matrix]:
    """``(*a_A o Phi_L, Phi_R)`` for the symmetry axiom, both ``A -> *A``.

    ``Phi_L = (eps m (x) 1_{A*})(1_A (x) coev_A)`` and
    ``Phi_R = (1_{*A} (x) eps m)(coev'_A (x) 1_A)``; the pivotal insertion is
    the left dual of ``a_A``.
    """
    A = f.algebra
    X = A.space
    d = A.dim
    pair = f.counit @ A.mult
    phi_l = compose(tensor(pair, I(d)), tensor(I(d), vectg.coev(X)))
    phi_r = compose(tensor(I(d), pair), tensor(vectg.coev_prime(X), I(d)))
    star_a = vectg.left_dual_morphism(vectg.pivotal(X, f.pivotal), X, X)
    return star_a @ phi_l, phi_r


def frobenius_verify(f: FrobeniusData) -> FrobeniusReport:
    A = f.algebra
    X, d, g = A.space, A.dim, A.group
    m, eta, eps, delta = A.mult, A.unit, f.counit, f.comult
    order = getattr(f.pivotal, "root_order", 1)
    wit: dict = {}

    homog = all(X.grades[j] == g.identity for _, j, _ in eps.entries())
    dgrades = _tensor_grades(g, X.grades, X.grades)
    homog_delta = all(dgrades[i] == X.grades[j] for i, j, _ in delta.entries())
    coassoc = tensor(delta, I(d)) @ delta == tensor(I(d), delta) @ delta
    counit = (tensor(eps, I(d)) @ delta == I(d)) and (tensor(I(d), eps) @ delta == I(d))
    dm = delta @ m
    frob1 = dm == tensor(m, I(d)) @ tensor(I(d), delta)
    frob2 = dm == tensor(I(d), m) @ tensor(delta, I(d))
    failed = [name for name, ok in (("counit degree", homog), ("comultiplication degree", homog_delta),
                                    ("coassociativity", coassoc), ("counit laws", counit),
                                    ("Delta m = (m x 1)(1 x Delta)", frob1),
                                    ("Delta m = (1 x m)(Delta x 1)", frob2)) if not ok]
    is_frob = not failed
    if failed:
        wit["frobenius"] = failed

    beta_a = _special_scalar(m @ delta, d)
    beta_1 = (eps @ eta)[0, 0]
    is_special = is_frob and beta_a is not None and bool(beta_a) and bool(beta_1)
    beta_a_c = _as_cyclotomic(beta_a, order) if beta_a is not None else None
    beta_1_c = _as_cyclotomic(beta_1, order)
    is_norm = is_special and beta_a == 1

    lhs, rhs = symmetry_maps(f)
    diff = lhs.first_difference(rhs)
    is_sym = diff is None
    if diff is not None:
        wit["symmetric"] = {"out": f"*{X.ids[diff[0]]}", "in": X.ids[diff[1]],
                            "pivotal_side": str(lhs[diff]), "direct_side": str(rhs[diff])}

    sep = check_separable(A)
    if not sep.separable:
        wit["separable"] = {"rank": sep.certificate}
    return FrobeniusReport(is_frob, is_special, beta_1_c, beta_a_c, is_norm, is_sym,
                           sep.separable, wit, sep.splitting)


# --- separability -------------------------------------------------------------------

@dataclass
class SeparabilityResult:
    separable: bool
    splitting: Matrix | None
    certificate: tuple[int, int] | None
    section_verified: bool = False

    def report(self) -> Report:
        rep = Report("check_separable")
        rep.add("bimodule section of multiplication exists", self.separable,
                None if self.separable else {"rank_A": self.certificate[0], "rank_augmented": self.certificate[1]})
        if self.separable:
            rep.add("m o s = id", self.section_verified)
        return rep


def check_separable(a: GradedAlgebra) -> SeparabilityResult:
    """Solve for a degree-preserving bimodule map ``s: A -> A (x) A`` with ``m s = id``."""
    d, g = a.dim, a.group
    gr = a.space.grades
    tgr = _tensor_grades(g, gr, gr)
    var = {}
    for r in range(d * d):
        for c in range(d):
            if tgr[r] == gr[c]:
                var[(r, c)] = len(var)
    rows, rhs = [], []

    def S(r, c):
        return var.get((r, c))

    # m s = id
    mcols = a.mult.rows
    for i in range(d):
        for c in range(d):
            row: dict = {}
            for r, v in mcols[i].items():
                k = S(r, c)
                if k is not None:
                    row[k] = row.get(k, 0) + v
            rows.append(row)
            rhs.append(Fraction(1) if i == c else 0)
    # s(b x) = (b (x) 1) s(x)  and  s(x b) = s(x) (1 (x) b)
    mc = a.mult.columns()
    lmul = tensor(a.mult, I(d))      # A (x) A (x) A -> A (x) A
    rmul = tensor(I(d), a.mult)
    for b in range(d):
        for x in range(d):
            for side in ("left", "right"):
                prod = mc[b * d + x] if side == "left" else mc[x * d + b]
                for r in range(d * d):
                    row = {}
                    for c, v in prod.items():
                        k = S(r, c)
                        if k is not None:
                            row[k] = row.get(k, 0) + v
                    # (b (x) 1) s(x): entries of lmul at row r, column b*d^2 + rr
                    for rr in range(d * d):
                        k = S(rr, x)
                        if k is None:
                            continue
                        coef = lmul[r, b * d * d + rr] if side == "left" else rmul[r, rr * d + b]
                        if coef:
                            row[k] = row.get(k, 0) - coef
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
                        rhs.append(0)
    sol, cert = solve(rows, rhs, len(var))
    if sol is None:
        return SeparabilityResult(False, None, cert)
    s = Matrix(d * d, d)
    for (r, c), k in var.items():
        v = sol.get(k, 0)
        if v:
            s.rows[r][c] = v
    return SeparabilityResult(True, s, None, section_verified=(a.mult @ s == I(d)))


# --- projectors and relative tensor products ---------------------------------------

def _check_frobenius_for_projector(f: FrobeniusData) -> FrobeniusReport:
    rep = frobenius_verify(f)
    if not rep.is_special or not rep.is_normalized:
        raise NotNormalized("projector needs a special Frobenius algebra with beta_A = 1",
                            witness={"beta_A": _s(rep.beta_A), "special": rep.is_special})
    return rep


def _projector_matrix(f: FrobeniusData, m: GradedBimodule, n: GradedBimodule) -> Matrix:
    """``x (x) y -> sum x.a' (x) a''.y`` over ``Delta(eta(1)) = sum a' (x) a''``."""
    A = f.algebra
    if m.right_algebra != A or n.left_algebra != A:
        raise ValueError("module algebras must match the Frobenius algebra")
    da, dm, dn = A.dim, m.dim, n.dim
    casimir = (f.comult @ A.unit).column(0)
    P = Matrix(dm * dn, dm * dn)
    for idx, w in casimir.items():
        a1, a2 = divmod(idx, da)
        R = Matrix(dm, dm, [{u: m.right_action[v, u * da + a1] for u in range(dm) if m.right_action[v, u * da + a1]}
                            for v in range(dm)])
        L = Matrix(dn, dn, [{u: n.left_action[v, a2 * dn + u] for u in range(dn) if n.left_action[v, a2 * dn + u]}
                            for v in range(dn)])
        P = P + tensor(R, L).scale(w)
    return P


def projector(f: FrobeniusData, m: GradedBimodule, mt: GradedBimodule) -> Matrix:
    """``P_{m, mt}`` on ``m (x) *mt`` for right A-modules ``m`` and ``mt``; checked idempotent."""
    _check_frobenius_for_projector(f)
    P = _projector_matrix(f, m, left_dual_module(mt))
    if P @ P != P:
        raise ValidationError("projector is not idempotent")  # pragma: no cover
    return P


@dataclass
class RelativeTensor:
    dim: int
    grade_class: dict[int, int]
    method: str
    space: GradedVectorSpace

    def class_in(self, ring) -> RingElement:
        return RingElement(ring, dict(self.grade_class))


def _graded_rank(columns_matrix: Matrix, grades: Sequence[int]) -> dict[int, int]:
    """Rank of the image of a homogeneous map, split by target degree."""
    by: dict[int, list[int]] = {}
    for i, gr in enumerate(grades):
        by.setdefault(gr, []).append(i)
    out = {}
    cols = columns_matrix.columns()
    for gr, idx in by.items():
        keep = set(idx)
        ech = Echelon()
        for c in cols:
            ech.add({i: v for i, v in c.items() if i in keep})
        out[gr] = ech.rank
    return out


def relative_tensor(alg, m: GradedBimodule, n: GradedBimodule, method: str = "coequalizer") -> RelativeTensor:
    """``m (x)_A n`` for a right A-module ``m`` and a left A-module ``n``.

    ``alg`` is a :class:`GradedAlgebra` or a :class:`FrobeniusData`.  The
    coequalizer of ``rho (x) 1`` and ``1 (x) lambda`` is the reference; with
    Frobenius data the projector image can be used instead, and
    ``method="both"`` checks that the two agree.
    """
    frob = alg if isinstance(alg, FrobeniusData) else None
    A = frob.algebra if frob else alg
    if m.right_algebra != A or n.left_algebra != A:
        raise AlgebraMismatch("right algebra of m and left algebra of n must both be the given algebra")
    space = m.space.tensor(n.space)
    dims = space.grade_class()

    def coequalizer():
        D = tensor(m.right_action, I(n.dim)) - tensor(I(m.dim), n.left_action)
        ranks = _graded_rank(D, space.grades)
        return {gr: dims[gr] - ranks.get(gr, 0) for gr in dims}

    def via_projector():
        if frob is None:
            raise PreconditionFailed("projector path needs Frobenius data")
        _check_frobenius_for_projector(frob)
        P = _projector_matrix(frob, m, n)
        return _graded_rank(P, space.grades)

    if method == "coequalizer":
        cls = coequalizer()
    elif method == "projector":
        cls = via_projector()
    elif method == "both":
        cls = coequalizer()
        other = via_projector()
        if {k: v for k, v in cls.items() if v} != {k: v for k, v in other.items() if v}:
            raise ValidationError("coequalizer and projector disagree", witness={"coequalizer": cls, "projector": other})
    else:
        raise ValueError(f"unknown method {method!r}")
    cls = {gr: v for gr, v in sorted(cls.items()) if v}
    g = space.group
    ids, grades = [], []
    for gr, mult in cls.items():
        for k in range(mult):
            ids.append(f"q{len(ids)}")
            grades.append(gr)
    return RelativeTensor(sum(cls.values()), cls, method, GradedVectorSpace(g, tuple(ids), tuple(grades)))


def inner_hom_via_algebra(b: GradedAlgebra, n: GradedBimodule, nt: GradedBimodule) -> RingElement:
    """Class of ``n (x)_B *nt`` in the pointed ring of the grading group."""
    if n.right_algebra != b or nt.right_algebra != b:
        raise AlgebraMismatch("both modules must be right modules over the given algebra")
    rt = relative_tensor(b, n, left_dual_module(nt))
    return rt.class_in(pointed_ring(b.group))


# --- inner product from Frobenius data ---------------------------------------------

@dataclass
class InnerProductIso:
    matrix: Matrix
    square_commutes: bool
    rank: int
    witness: object = None


def inner_product_from_frobenius(f: FrobeniusData, m: GradedBimodule, mt: GradedBimodule) -> InnerProductIso:
    """Verify ``(1 (x) *a_mt) P*_{mt,m} = P_{m,mt} (1 (x) *a_mt)`` and return the descended map.

    Both sides are maps ``m (x) mt* -> m (x) *mt``; ``P*`` is the right dual of
    ``P_{mt, m}`` transported along ``(mt (x) *m)* = m (x) mt*``.
    """
    rep = frobenius_verify(f)
    for ok, what in ((rep.is_frobenius, "Frobenius"), (rep.is_special, "special"),
                     (rep.is_symmetric, "symmetric"), (rep.is_normalized, "normalized")):
        if not ok:
            raise PreconditionFailed(f"Frobenius data is not {what}", witness=what)
    P_m = projector(f, m, mt)
    P_mt = projector(f, mt, m)
    X = mt.space.tensor(m.space.left_dual())
    P_dual = vectg.right_dual_morphism(P_mt, X, X)
    dm, dt = m.dim, mt.dim
    # (x_i (x) *y_j)* sits at index i*dm + j; it corresponds to y_j (x) x_i* at j*dt + i
    perm = Matrix(dm * dt, dt * dm)
    for i in range(dt):
        for j in range(dm):
            perm.rows[j * dt + i][i * dm + j] = Fraction(1)
    P_star = perm @ P_dual @ perm.T
    star_a = vectg.left_dual_morphism(vectg.pivotal(mt.space, f.pivotal), mt.space, mt.space)
    ins = tensor(I(dm), star_a)
    lhs = ins @ P_star
    rhs = P_m @ ins
    diff = lhs.first_difference(rhs)
    iso = P_m @ ins @ P_star
    return InnerProductIso(iso, diff is None, iso.rank(), diff)


# --- triangulator ---------------------------------------------------------------------

def phi_triangulator(simples: Sequence[GradedBimodule], obj: GradedBimodule,
                     probes: Sequence[GradedBimodule] | None = None) -> Report:
    """Check ``dim Hom(n, Phi(obj)) = dim Hom(n, obj)`` with ``Phi(m) = sum_i m_i (x) Hom(m_i, m)``."""
    k = len(simples)
    gram = [[hom_dimension(x, y) for y in simples] for x in simples]
    for i in range(k):
        for j in range(k):
            if gram[i][j] != (1 if i == j else 0):
                raise NotSemisimpleBasis("supplied objects are not pairwise non-isomorphic simples",
                                         witness={"pair": (simples[i].name, simples[j].name), "dim": gram[i][j]})
    rep = Report("phi_triangulator")
    mult = [hom_dimension(s, obj) for s in simples]
    probes = list(simples if probes is None else probes)
    for n in probes:
        phi = sum(hom_dimension(n, s) * c for s, c in zip(simples, mult))
        direct = hom_dimension(n, obj)
        rep.add(f"Hom({n.name}, Phi({obj.name}))", phi == direct, {"phi": phi, "direct": direct})
    return rep
