"""The acceptance criteria as runnable checks over a corpus directory.

Each criterion returns a :class:`CriterionResult`; a criterion passes when
its exact checks hold and it finishes within its time budget.  The CLI
``report`` command and ``tests/test_acceptance.py`` both run these.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import algebra as alg
from . import io
from .errors import Infeasible, MalformedInput, PivcatError
from .fusion_ring import FusionRing, fp_dimensions, star
from .gr_modules import BimoduleNim, inner_hom_left, snake_check
from .groups import FiniteGroup
from .pointed import (CosetModule, build_module_trace, conjugate_pivotal, coset_to_nimrep,
                      double_coset_tensor, enumerate_characters, enumerate_module_traces,
                      module_trace_exists, sign_character, spherical_check, trace_of_simple,
                      trace_solution_nullity)


@dataclass
class Corpus:
    root: Path
    rings: dict[str, FusionRing] = field(default_factory=dict)
    nimreps: dict[str, BimoduleNim] = field(default_factory=dict)
    cosets: dict[str, CosetModule] = field(default_factory=dict)
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    algebras: dict[str, io.LoadedAlgebra] = field(default_factory=dict)
    bimodules: dict[str, alg.GradedBimodule] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    def group(self, name: str) -> FiniteGroup:
        for g in self.groups.values():
            if g.name == name:
                return g
        raise MalformedInput(f"corpus has no group named {name}")

    def algebra(self, name: str) -> io.LoadedAlgebra:
        for a in self.algebras.values():
            if a.algebra.name == name:
                return a
        raise MalformedInput(f"corpus has no algebra named {name}")


def load_corpus(root: str | Path) -> Corpus:
    """Load every ``*.json`` file; failures are recorded, not raised."""
    root = Path(root)
    if not root.is_dir():
        raise MalformedInput(f"{root} is not a directory")
    files = sorted(root.glob("*.json"))
    if not files:
        raise MalformedInput(f"{root} contains no data files")
    corpus = Corpus(root)
    for path in files:
        try:
            kind, obj, data = io.load(path)
            if kind == "ring":
                corpus.rings[path.name] = obj
            elif kind == "nimrep":
                corpus.nimreps[path.name] = obj
                cm = io.coset_module_from_data(data, path.parent)
                if cm is not None:
                    corpus.cosets[path.name] = cm
            elif kind == "group":
                corpus.groups[path.name] = obj
            elif kind == "algebra":
                corpus.algebras[path.name] = obj
            else:
                corpus.bimodules[path.name] = obj
        except PivcatError as exc:
            corpus.errors[path.name] = f"{type(exc).__name__}: {exc}"
    return corpus


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    budget: float
    detail: dict

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "budget_seconds": self.budget, "detail": self.detail}


CRITERIA: list[tuple[int, str, float, Callable[[Corpus], tuple[bool, dict]]]] = []


def criterion(number: int, title: str, budget: float):
    def wrap(fn):
        CRITERIA.append((number, title, budget, fn))
        return fn
    return wrap


def _trace_cases(corpus: Corpus):
    for gname, m in (("S3", 2), ("D4", 4)):
        g = corpus.group(gname)
        for h in g.all_subgroups:
            for k in enumerate_characters(g, m):
                yield g, h, k


@criterion(1, "module trace exists iff kappa is trivial on H", 5.0)
def module_trace_criterion(corpus: Corpus):
    cases, bad = 0, []
    for g, h, k in _trace_cases(corpus):
        cases += 1
        closed = module_trace_exists(g, h, k)
        try:
            build_module_trace(g, h, k)
            solved = True
        except Infeasible:
            solved = False
        brute = enumerate_module_traces(g, h, k)[0] > 0
        if not closed == solved == brute:
            bad.append((g.name, g.format_subset(h), str(k)))
    return not bad and cases >= 42, {"cases": cases, "disagreements": bad}


@criterion(2, "kH symmetric Frobenius iff module trace exists", 10.0)
def frobenius_trace_criterion(corpus: Corpus):
    cases, bad = 0, []
    for g, h, k in _trace_cases(corpus):
        cases += 1
        a = alg.subgroup_algebra(g, h)
        sym = alg.frobenius_verify(alg.standard_group_frobenius(a, k)).is_symmetric
        if sym != module_trace_exists(g, h, k):
            bad.append((g.name, g.format_subset(h), str(k)))
    return not bad, {"cases": cases, "disagreements": bad}


@criterion(3, "induced pairing on double cosets equals bimodule Hom pairing", 10.0)
def rieffel_criterion(corpus: Corpus):
    s3, z4 = corpus.group("S3"), corpus.group("Z4")
    a3 = ["e", "(123)", "(132)"]
    cases = [(s3, a3, a3), (s3, ["e", "(12)"], a3), (z4, ["e", "g2"], ["e", "g2"])]
    detail, ok = [], True
    for g, h, k in cases:
        d = double_coset_tensor(g, h, k)
        good = d.well_defined and d.pairings_agree and d.size == d.hom_rank
        ok &= good
        detail.append({"group": g.name, "H": h, "K": k, "double_cosets": d.size,
                       "hom_rank": d.hom_rank, "rieffel": d.rieffel_table, "hom": d.hom_table,
                       "well_defined": d.well_defined})
    return ok, {"cases": detail}


def _required_nimreps(corpus: Corpus) -> list[str]:
    want = ["nimrep_fibonacci_regular.json", "nimrep_ising_regular.json"]
    want += [f"nimrep_z{n}_regular.json" for n in range(2, 7)]
    return want


@criterion(4, "star<m_a, m_b> = <m_b, m_a> on the NIM-rep corpus", 1.0)
def hermitian_criterion(corpus: Corpus):
    missing = [n for n in _required_nimreps(corpus) if n not in corpus.nimreps]
    s3_cosets = [n for n, c in corpus.cosets.items() if c.group.name == "S3"]
    bad = []
    for name, m in sorted(corpus.nimreps.items()):
        ring = m.left_ring
        for a in m.module_labels:
            for b in m.module_labels:
                if star(ring, inner_hom_left(m, a, b)) != inner_hom_left(m, b, a):
                    bad.append((name, a, b))
    ok = not bad and not missing and len(s3_cosets) == 6 and not corpus.errors
    return ok, {"modules": len(corpus.nimreps), "s3_coset_modules": len(s3_cosets),
                "missing": missing, "violations": bad, "load_errors": corpus.errors}


@criterion(5, "snake composites are the identity; triangulator on (kA3, kA3)-bimodules", 5.0)
def snake_criterion(corpus: Corpus):
    bad = [name for name, m in sorted(corpus.nimreps.items()) if not snake_check(m).ok]
    s3 = corpus.group("S3")
    a = alg.subgroup_algebra(s3, ["e", "(123)", "(132)"])
    simples = alg.simple_bimodules(a, a, a.space.grades, a.space.grades)
    objects = [alg.regular_bimodule(a)] + [alg.free_bimodule(a, a, g) for g in range(s3.order)]
    tri = [alg.phi_triangulator(simples, obj).ok for obj in objects]
    ok = not bad and all(tri) and bool(corpus.nimreps) and not corpus.errors
    return ok, {"modules": len(corpus.nimreps), "snake_failures": bad,
                "simples": len(simples), "triangulator_objects": len(objects), "triangulator_ok": all(tri),
                "load_errors": corpus.errors}


@criterion(6, "NIM inner-hom coefficients equal categorified Hom dimensions", 5.0)
def adjunction_criterion(corpus: Corpus):
    bad, checked = [], 0
    for name, cm in sorted(corpus.cosets.items()):
        m = corpus.nimreps[name]
        exported = coset_to_nimrep(cm)
        if not exported.same_data(m):
            bad.append((name, "file disagrees with coset action"))
            continue
        g = cm.group
        kh = alg.subgroup_algebra(g, cm.subgroup)
        mods = [alg.coset_right_module(kh, x) for x in cm.representatives]
        for a in range(cm.size):
            for b in range(cm.size):
                coeffs = inner_hom_left(m, a, b)
                for x in range(g.order):
                    nim = int(coeffs.coefficient(x))
                    explicit = cm.hom_dimension(a, x, b)
                    cat = alg.hom_dimension(mods[a], alg.shift_module(x, mods[b]))
                    checked += 1
                    if not nim == explicit == cat:
                        bad.append((name, cm.labels[a], cm.labels[b], g.names[x], nim, explicit, cat))
    return not bad and checked > 0, {"coset_modules": len(corpus.cosets), "triples": checked,
                                     "violations": bad[:10]}


@criterion(7, "conjugate pivotal swaps traces; spherical iff self-conjugate", 1.0)
def conjugate_criterion(corpus: Corpus):
    bad, count = [], 0
    for gname, m in (("S3", 2), ("Z3", 3)):
        g = corpus.group(gname)
        for k in enumerate_characters(g, m):
            count += 1
            conj = conjugate_pivotal(k)
            for x in range(g.order):
                if trace_of_simple(conj, x, "right") != trace_of_simple(k, x, "left"):
                    bad.append((gname, str(k), g.names[x]))
            if spherical_check(k) != (conj == k) or conjugate_pivotal(conj) != k:
                bad.append((gname, str(k), "spherical"))
    return not bad, {"characters": count, "violations": bad}


@criterion(8, "Frobenius scalars of kZ2 and rescaling invariance", 1.0)
def scalar_criterion(corpus: Corpus):
    from fractions import Fraction
    from .pointed import trivial_character

    la = corpus.algebra("kZ2")
    f = la.frobenius(trivial_character(la.algebra.group))
    r = alg.frobenius_verify(f)
    n = alg.frobenius_verify(alg.normalize(f))
    sweep = {}
    for lam in (Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(3)):
        rr = alg.frobenius_verify(alg.rescale(f, lam))
        twice = alg.frobenius_verify(alg.rescale(alg.rescale(f, lam), 1 / lam))
        sweep[str(lam)] = str(rr.beta_1 * rr.beta_A)
        if rr.beta_1 * rr.beta_A != 2 or twice.beta_A != 2 or twice.beta_1 != 1:
            sweep[str(lam)] += " (mismatch)"
    ok = (r.is_special and r.beta_A == 2 and r.beta_1 == 1 and not r.is_normalized
          and n.is_normalized and n.beta_A == 1 and n.beta_1 == 2
          and all(v == "2" for v in sweep.values()))
    return ok, {"beta_A": str(r.beta_A), "beta_1": str(r.beta_1),
                "normalized": {"beta_A": str(n.beta_A), "beta_1": str(n.beta_1)}, "beta_product": sweep}


@criterion(9, "separable group algebras, inseparable dual numbers", 2.0)
def separability_criterion(corpus: Corpus):
    s3 = corpus.group("S3")
    out = {}
    for label, h in (("A3", ["e", "(123)", "(132)"]), ("Z2", ["e", "(12)"]), ("S3", list(s3.names))):
        res = alg.check_separable(alg.subgroup_algebra(s3, h))
        out[label] = res.separable and res.section_verified
    dual = corpus.algebra("Q[t]/t^2").algebra
    res = alg.check_separable(dual)
    out["Q[t]/t^2"] = {"separable": res.separable, "rank_certificate": res.certificate}
    ok = out["A3"] and out["Z2"] and out["S3"] and not res.separable
    return ok, out


@criterion(10, "balanced traces on Vect[A3\\S3] form one scalar orbit", 2.0)
def uniqueness_criterion(corpus: Corpus):
    s3 = corpus.group("S3")
    a3 = ["e", "(123)", "(132)"]
    k = sign_character(s3)
    normalized, first = enumerate_module_traces(s3, a3, k, normalize=True)
    free, _ = enumerate_module_traces(s3, a3, k, normalize=False)
    nullity = trace_solution_nullity(s3, a3, k)
    solved = list(build_module_trace(s3, a3, k).exponents)
    ok = normalized == 1 and free == k.root_order and nullity == 1 and solved == first
    return ok, {"normalized_solutions": normalized, "unnormalized_solutions": free,
                "root_order": k.root_order, "nullity": nullity, "theta_exponents": solved}


@criterion(11, "Fibonacci Frobenius-Perron dimensions", 1.0)
def fp_criterion(corpus: Corpus):
    ring = corpus.rings.get("ring_fibonacci.json")
    if ring is None:
        return False, {"missing": "ring_fibonacci.json"}
    dims = fp_dimensions(ring)
    golden = 1.6180339887
    ok = dims[ring.unit] == 1 and abs(dims[ring.index("τ")] - golden) < 1e-9
    return bool(ok), {"dimensions": [float(x) for x in dims], "error": abs(float(dims[1]) - (1 + math.sqrt(5)) / 2)}


def run_criterion(number: int, corpus: Corpus) -> CriterionResult:
    for num, title, budget, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn(corpus)
            except PivcatError as exc:
                ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
            elapsed = time.perf_counter() - start
            detail = dict(detail)
            return CriterionResult(num, title, bool(ok) and elapsed < budget, elapsed, budget, detail)
    raise KeyError(number)


def run_all(root: str | Path) -> list[CriterionResult]:
    corpus = load_corpus(root)
    return [run_criterion(num, corpus) for num, *_ in CRITERIA]
