"""JSON loaders for rings, NIM-reps, groups, algebras and bimodules.

References to other data (``"ring"``, ``"group"``, ``"left_algebra"``...)
are either inline objects, paths relative to the referring file, or builtin
names: ``fibonacci``, ``ising``, ``trivial``, ``pointed:<group>`` for rings
and ``S3``, ``D4``, ``Z<n>``, ``trivial`` for groups.  Rationals are strings
``"p/q"`` or integers.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from . import algebra as alg
from .errors import MalformedInput, PivcatError, SizeGuardExceeded
from .fusion_ring import (DEFAULT_MAX_SIMPLES, FusionRing, build_fusion_ring, fibonacci_ring,
                          ising_ring, pointed_ring, trivial_ring)
from .gr_modules import BimoduleNim, build_bimodule, build_nimrep, trivial_nimrep
from .groups import FiniteGroup, builtin_group
from .linalg import Matrix
from .pointed import CosetModule
from .vectg import GradedVectorSpace

KINDS = ("ring", "nimrep", "group", "algebra", "bimodule")


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except UnicodeDecodeError:
        raise MalformedInput(f"{path}: not UTF-8 text") from None
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def default_corpus_dir() -> Path:
    env = os.environ.get("PIVCAT_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("pivcat") / "corpus"))


def detect_kind(data: Any) -> str:
    if not isinstance(data, dict):
        raise MalformedInput("top-level JSON value must be an object")
    if "kind" in data:
        if data["kind"] not in KINDS:
            raise MalformedInput(f"unknown kind {data['kind']!r}")
        return data["kind"]
    if "fusion" in data:
        return "ring"
    if "module_labels" in data:
        return "nimrep"
    if "table" in data:
        return "group"
    if "mult" in data:
        return "algebra"
    if "left_algebra" in data or "right_algebra" in data:
        return "bimodule"
    raise MalformedInput("cannot tell what kind of data this file holds")


def _require(data: dict, *keys: str):
    for k in keys:
        if k not in data:
            raise MalformedInput(f"missing key {k!r}")


def _rational(x) -> Fraction:
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    except (ValueError, ZeroDivisionError, TypeError):
        raise MalformedInput(f"not a rational number: {x!r}") from None


# --- groups -------------------------------------------------------------------------

def group_from_data(data: dict, name: str = "G") -> FiniteGroup:
    _require(data, "table")
    table = data["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise MalformedInput("group table must be a list of rows")
    if "order" in data and data["order"] != len(table):
        raise MalformedInput("declared order does not match the table")
    try:
        arr = np.array(table, dtype=np.int64)
    except (ValueError, TypeError):
        raise MalformedInput("group table must be rectangular and integral") from None
    return FiniteGroup(arr, data.get("names"), name=data.get("name", name))


def resolve_group(ref, base: Path | None) -> FiniteGroup:
    if isinstance(ref, dict):
        return group_from_data(ref)
    if not isinstance(ref, str):
        raise MalformedInput(f"bad group reference {ref!r}")
    path = _maybe_path(ref, base)
    if path is not None:
        return group_from_data(read_json(path), name=Path(ref).stem)
    try:
        return builtin_group(ref)
    except PivcatError:
        raise MalformedInput(f"unknown group reference {ref!r}") from None


def _maybe_path(ref: str, base: Path | None) -> Path | None:
    if not ref.endswith(".json"):
        return None
    p = Path(ref)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


# --- rings and NIM-reps ------------------------------------------------------------

def ring_from_data(data: dict, max_simples: int = DEFAULT_MAX_SIMPLES) -> FusionRing:
    _require(data, "labels", "unit", "dual", "fusion")
    labels = data["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise MalformedInput("labels must be a list of strings")
    if len(labels) > max_simples:
        raise SizeGuardExceeded(f"{len(labels)} simples exceeds the guard of {max_simples}")
    pos = {lab: i for i, lab in enumerate(labels)}

    def idx(lab):
        if lab not in pos:
            raise MalformedInput(f"unknown label {lab!r}")
        return pos[lab]

    dual_map = data["dual"]
    if not isinstance(dual_map, dict) or set(dual_map) != set(labels):
        raise MalformedInput("dual must map every label to a label")
    dual = [idx(dual_map[lab]) for lab in labels]
    coeffs = {}
    for entry in data["fusion"]:
        if not isinstance(entry, dict):
            raise MalformedInput("fusion entries must be objects")
        _require(entry, "i", "j", "k", "n")
        n = entry["n"]
        if not isinstance(n, int) or n < 0:
            raise MalformedInput(f"multiplicity must be a non-negative integer, got {n!r}")
        coeffs[(idx(entry["i"]), idx(entry["j"]), idx(entry["k"]))] = n
    return build_fusion_ring(labels, idx(data["unit"]), dual, coeffs, max_simples=max_simples)


def resolve_ring(ref, base: Path | None, max_simples: int = DEFAULT_MAX_SIMPLES) -> FusionRing:
    if isinstance(ref, dict):
        return ring_from_data(ref, max_simples)
    if not isinstance(ref, str):
        raise MalformedInput(f"bad ring reference {ref!r}")
    if ref.startswith("pointed:"):
        return pointed_ring(resolve_group(ref[len("pointed:"):], base))
    path = _maybe_path(ref, base)
    if path is not None:
        return ring_from_data(read_json(path), max_simples)
    builtin = {"fibonacci": fibonacci_ring, "ising": ising_ring, "trivial": trivial_ring}
    if ref in builtin:
        return builtin[ref]()
    raise MalformedInput(f"unknown ring reference {ref!r}")


def _matrices(table: dict, ring: FusionRing, n: int) -> np.ndarray:
    if not isinstance(table, dict):
        raise MalformedInput("actions must map ring labels to matrices")
    mats = np.zeros((ring.rank, n, n), dtype=np.int64)
    mats[ring.unit] = np.eye(n, dtype=np.int64)
    for lab, mat in table.items():
        if lab not in ring.labels:
            raise MalformedInput(f"action given for unknown ring label {lab!r}")
        try:
            arr = np.array(mat, dtype=np.int64)
        except (ValueError, TypeError):
            raise MalformedInput(f"matrix for {lab!r} is not an integer matrix") from None
        if arr.shape != (n, n):
            raise MalformedInput(f"matrix for {lab!r} has shape {arr.shape}, expected {(n, n)}")
        mats[ring.index(lab)] = arr
    return mats


def nimrep_from_data(data: dict, base: Path | None, max_simples: int = DEFAULT_MAX_SIMPLES) -> BimoduleNim:
    _require(data, "ring", "module_labels", "left_action")
    ring = resolve_ring(data["ring"], base, max_simples)
    labels = data["module_labels"]
    if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
        raise MalformedInput("module_labels must be a non-empty list of strings")
    n = len(labels)
    left = build_nimrep(ring, labels, _matrices(data["left_action"], ring, n), side="left")
    if "right_action" in data:
        rring = resolve_ring(data.get("right_ring", data["ring"]), base, max_simples)
        right = build_nimrep(rring, labels, _matrices(data["right_action"], rring, n), side="right")
    else:
        right = trivial_nimrep(trivial_ring(), labels, "right")
    return build_bimodule(left, right)


def coset_module_from_data(data: dict, base: Path | None) -> CosetModule | None:
    """The coset module a NIM-rep file declares it comes from, if any."""
    info = data.get("coset")
    if info is None:
        return None
    if not isinstance(info, dict):
        raise MalformedInput("coset metadata must be an object")
    _require(info, "group", "subgroup")
    group = resolve_group(info["group"], base)
    return CosetModule(group, info["subgroup"], name=info.get("name"))


# --- algebras and bimodules ---------------------------------------------------------

def _space(data: dict, group: FiniteGroup) -> GradedVectorSpace:
    _require(data, "basis")
    ids, grades = [], []
    for b in data["basis"]:
        if not isinstance(b, dict):
            raise MalformedInput("basis entries must be objects")
        _require(b, "id", "grade")
        ids.append(str(b["id"]))
        try:
            grades.append(group.index(b["grade"]))
        except PivcatError:
            raise MalformedInput(f"unknown grade {b['grade']!r}") from None
    if len(set(ids)) != len(ids):
        raise MalformedInput("basis ids must be distinct")
    return GradedVectorSpace(group, tuple(ids), tuple(grades))


def _vector(entries: dict, space: GradedVectorSpace) -> dict[int, Fraction]:
    if not isinstance(entries, dict):
        raise MalformedInput("vectors must be objects mapping basis ids to rationals")
    out = {}
    for k, v in entries.items():
        if k not in space.ids:
            raise MalformedInput(f"unknown basis id {k!r}")
        val = _rational(v)
        if val:
            out[space.ids.index(k)] = val
    return out


@dataclass
class LoadedAlgebra:
    algebra: alg.GradedAlgebra
    counit: dict[int, Fraction] | None = None
    comult: Matrix | None = None
    data: dict = field(default_factory=dict)

    def frobenius(self, pivotal) -> alg.FrobeniusData:
        if self.counit is None:
            raise MalformedInput("algebra file has no counit")
        if self.comult is None:
            return alg.frobenius_from_counit(self.algebra, self.counit, pivotal)
        d = self.algebra.dim
        return alg.FrobeniusData(self.algebra, Matrix(1, d, [dict(self.counit)]), self.comult, pivotal)


def algebra_from_data(data: dict, base: Path | None, max_basis: int | None = None) -> LoadedAlgebra:
    _require(data, "group", "basis", "mult", "unit")
    group = resolve_group(data["group"], base)
    space = _space(data, group)
    if max_basis is not None and space.dim > max_basis:
        raise SizeGuardExceeded(f"algebra dimension {space.dim} exceeds the guard of {max_basis}")
    products = {}
    for entry in data["mult"]:
        _require(entry, "i", "j", "out")
        try:
            key = (space.ids.index(entry["i"]), space.ids.index(entry["j"]))
        except ValueError:
            raise MalformedInput(f"unknown basis id in product {entry['i']!r}*{entry['j']!r}") from None
        products[key] = _vector(entry["out"], space)
    a = alg.algebra_from_table(space, products, _vector(data["unit"], space), name=data.get("name", "A"))
    alg.validate_algebra(a)
    counit = _vector(data["counit"], space) if "counit" in data else None
    comult = None
    if "comult" in data:
        d = space.dim
        cols = [dict() for _ in range(d)]
        for entry in data["comult"]:
            _require(entry, "i", "out")
            col = {}
            for pair, v in entry["out"].items():
                left, _, right = pair.partition("|")
                if left not in space.ids or right not in space.ids:
                    raise MalformedInput(f"bad tensor id {pair!r}; use 'a|b'")
                col[space.ids.index(left) * d + space.ids.index(right)] = _rational(v)
            cols[space.ids.index(entry["i"])] = col
        comult = Matrix.from_columns(d * d, cols)
    return LoadedAlgebra(a, counit, comult, data)


def resolve_algebra(ref, base: Path | None, group: FiniteGroup) -> alg.GradedAlgebra:
    if ref is None or ref == "unit":
        return alg.unit_algebra(group)
    if isinstance(ref, dict):
        return algebra_from_data(ref, base).algebra
    path = _maybe_path(ref, base) if isinstance(ref, str) else None
    if path is None:
        raise MalformedInput(f"bad algebra reference {ref!r}")
    return algebra_from_data(read_json(path), path.parent).algebra


def bimodule_from_data(data: dict, base: Path | None) -> alg.GradedBimodule:
    _require(data, "group", "basis")
    group = resolve_group(data["group"], base)
    space = _space(data, group)
    A = resolve_algebra(data.get("left_algebra"), base, group)
    B = resolve_algebra(data.get("right_algebra"), base, group)
    if A.group != group or B.group != group:
        raise MalformedInput("algebras must be graded by the bimodule's group")
    d = space.dim

    def action(key, other: alg.GradedAlgebra, left: bool) -> Matrix | None:
        if key not in data:
            return None
        cols = [dict() for _ in range(other.dim * d)]
        akey = "a" if left else "b"
        for entry in data[key]:
            _require(entry, akey, "v", "out")
            try:
                a = other.space.ids.index(entry[akey])
                v = space.ids.index(entry["v"])
            except ValueError:
                raise MalformedInput(f"unknown id in {key} entry {entry!r}") from None
            cols[a * d + v if left else v * other.dim + a] = _vector(entry["out"], space)
        return Matrix.from_columns(d, cols)

    x = alg.make_bimodule(space, A, B, action("left_action", A, True), action("right_action", B, False),
                          name=data.get("name", "M"))
    return alg.validate_bimodule(x)


# --- dispatch -------------------------------------------------------------------

def load(path: str | Path, max_basis: int | None = None) -> tuple[str, Any, dict]:
    """Read a data file; returns ``(kind, object, raw data)``."""
    path = Path(path)
    data = read_json(path)
    kind = detect_kind(data)
    base = path.parent
    guard = max_basis if max_basis is not None else DEFAULT_MAX_SIMPLES
    try:
        if kind == "ring":
            obj = ring_from_data(data, guard)
        elif kind == "nimrep":
            obj = nimrep_from_data(data, base, guard)
        elif kind == "group":
            obj = group_from_data(data, name=data.get("name", path.stem))
            if max_basis is not None and obj.order > max_basis:
                raise SizeGuardExceeded(f"group order {obj.order} exceeds the guard of {max_basis}")
        elif kind == "algebra":
            obj = algebra_from_data(data, base, max_basis)
        else:
            obj = bimodule_from_data(data, base)
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"{path}: malformed {kind} data ({exc!r})") from None
    return kind, obj, data
