"""``pivcat`` command-line interface.

Exit codes: 0 when every verdict passes, 1 when a check fails or an input
is rejected by validation, 2 when an input is malformed or missing.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import acceptance, algebra as alg, io
from .cyclotomic import format_scalar
from .errors import Infeasible, MalformedInput, PivcatError, SizeGuardExceeded
from .fusion_ring import check_star_axioms, fp_dimensions
from .gr_modules import inner_hom_left, inner_hom_right, snake_check, verify_inner_product_axioms
from .groups import FiniteGroup
from .pointed import (Character, build_module_trace, character_from_exponents,
                      double_coset_tensor, module_trace_exists, sign_character, trivial_character)
from .report import _jsonable

SCHEMA = "pivcat/1"


@dataclass
class CliReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: list[dict] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)
    error: str | None = None
    exit_code: int = 0

    def verdict(self, check: str, operation: str, anchor: str, passed: bool, witness=None):
        self.verdicts.append({"check": check, "operation": operation, "anchor": anchor,
                              "passed": bool(passed), "witness": _jsonable(witness)})

    def absorb(self, report, anchor: str):
        for v in report.verdicts:
            self.verdict(v.check, report.operation, anchor, v.passed, v.witness)

    def add_input(self, path: str | Path):
        self.inputs[Path(path).name] = io.digest(path)

    @property
    def passed(self) -> bool:
        return all(v["passed"] for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "exit_code": self.exit_code,
                "inputs": dict(sorted(self.inputs.items())), "verdicts": self.verdicts,
                "artifacts": _jsonable(self.artifacts), "error": self.error}


# --- argument helpers -------------------------------------------------------------

def _subgroup_names(text: str) -> list[str]:
    """``"e,(123),(132)"``; commas inside cycle brackets are not separators."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_character(text: str, group: FiniteGroup) -> Character:
    """``trivial``, ``sign``, a JSON file path, or inline JSON ``{"m": .., "exponents": {..}}``."""
    if text == "trivial":
        return trivial_character(group)
    if text == "sign":
        return sign_character(group)
    if text.endswith(".json"):
        data = io.read_json(text)
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            raise MalformedInput(f"cannot parse character {text!r}") from None
    if not isinstance(data, dict) or "m" not in data or "exponents" not in data:
        raise MalformedInput('character must look like {"m": 2, "exponents": {"(12)": 1}}')
    return character_from_exponents(group, int(data["m"]), data["exponents"])


def _load_group(path: str, rep: CliReport, max_basis: int | None) -> FiniteGroup:
    if Path(path).exists():
        rep.add_input(path)
        kind, obj, _ = io.load(path, max_basis)
        if kind != "group":
            raise MalformedInput(f"{path} holds a {kind}, not a group")
        return obj
    return io.resolve_group(path, None)


def _scalar(x, approx: bool) -> str:
    return format_scalar(x, approx)


# --- subcommands ------------------------------------------------------------------

def cmd_validate(args, rep: CliReport):
    rep.add_input(args.path)
    kind, obj, _ = io.load(args.path, args.max_basis)
    rep.artifacts["kind"] = kind
    if kind == "ring":
        rep.verdict("fusion ring axioms", "build_fusion_ring", "Grothendieck ring axioms", True)
        rep.absorb(check_star_axioms(obj), "star-algebra structure of the Grothendieck ring")
        dims = fp_dimensions(obj)
        rep.artifacts["labels"] = list(obj.labels)
        rep.artifacts["fp_dimensions"] = [_fmt_float(x) for x in dims]
    elif kind == "nimrep":
        rep.verdict("NIM-rep axioms", "build_nimrep", "module category action", True)
        rep.absorb(verify_inner_product_axioms(obj), "ring-valued inner product module")
        rep.absorb(snake_check(obj), "left and right triangulators")
        rep.artifacts["module_labels"] = list(obj.module_labels)
    elif kind == "group":
        rep.verdict("group axioms", "FiniteGroup", "finite group", True)
        rep.artifacts["order"] = obj.order
        rep.artifacts["subgroups"] = [obj.format_subset(h) for h in obj.all_subgroups]
    elif kind == "algebra":
        rep.absorb(alg.check_algebra(obj.algebra), "algebra object in Vect[G]")
        rep.artifacts["dimension"] = obj.algebra.dim
    else:
        rep.absorb(alg.check_bimodule(obj), "bimodule over algebra objects")
        rep.artifacts["dimension"] = obj.dim


def _fmt_float(x: float) -> str:
    return f"{float(x):.12g}"


def cmd_innerhom(args, rep: CliReport):
    rep.add_input(args.path)
    kind, obj, _ = io.load(args.path, args.max_basis)
    if kind != "nimrep":
        raise MalformedInput(f"{args.path} holds a {kind}, not a module")
    fn = inner_hom_left if args.side == "left" else inner_hom_right
    val = fn(obj, args.a, args.b)
    rep.verdict(f"<{args.a}, {args.b}> computed", f"inner_hom_{args.side}", "inner hom object", True)
    rep.artifacts["inner_hom"] = str(val)
    rep.artifacts["coefficients"] = val.to_dict()


def cmd_moduletrace(args, rep: CliReport):
    group = _load_group(args.group, rep, args.max_basis)
    names = _subgroup_names(args.subgroup)
    kappa = parse_character(args.character, group)
    exists = module_trace_exists(group, names, kappa)
    rep.artifacts["character"] = kappa.to_dict()
    rep.artifacts["subgroup"] = group.format_subset(group.subgroup(names))
    rep.artifacts["exists"] = exists
    try:
        tr = build_module_trace(group, names, kappa)
        rep.artifacts["theta"] = {k: _scalar(v, args.approx) for k, v in tr.values().items()}
        solved = True
    except Infeasible as exc:
        rep.artifacts["infeasible"] = exc.witness
        solved = False
    rep.verdict("closed form agrees with constraint propagation", "module_trace_exists",
                "module trace exists iff kappa is trivial on H", exists == solved)


def cmd_frobenius(args, rep: CliReport):
    rep.add_input(args.path)
    kind, obj, _ = io.load(args.path, args.max_basis)
    if kind != "algebra":
        raise MalformedInput(f"{args.path} holds a {kind}, not an algebra")
    kappa = parse_character(args.character, obj.algebra.group)
    res = alg.frobenius_verify(obj.frobenius(kappa))
    axioms = res.report()["Frobenius algebra"]
    rep.verdict(axioms.check, "frobenius_verify", "special symmetric normalized Frobenius algebra",
                axioms.passed, axioms.witness)
    # special/normalized/symmetric/separable are properties, not validity checks
    d = res.to_dict()
    if args.approx:
        d["approx"] = {key: _scalar(getattr(res, key), True)
                       for key in ("beta_1", "beta_A") if getattr(res, key) is not None}
    rep.artifacts["frobenius"] = d


def cmd_tensor(args, rep: CliReport):
    group = _load_group(args.group, rep, args.max_basis)
    d = double_coset_tensor(group, _subgroup_names(args.H), _subgroup_names(args.K))
    rep.artifacts["basis"] = [group.format_subset(b) for b in d.basis]
    rep.artifacts["rieffel_pairing"] = d.rieffel_table
    rep.artifacts["hom_pairing"] = d.hom_table
    rep.artifacts["hom_rank"] = d.hom_rank
    anchor = "relative tensor product of bimodules over algebra objects"
    rep.verdict("induced pairing descends to double cosets", "double_coset_tensor", anchor, d.well_defined)
    rep.verdict("induced pairing equals Hom pairing", "double_coset_tensor", anchor, d.pairings_agree)
    rep.verdict("double cosets match simple classes", "double_coset_tensor", anchor, d.size == d.hom_rank)


def cmd_report(args, rep: CliReport):
    root = Path(args.corpus) if args.corpus else io.default_corpus_dir()
    corpus = acceptance.load_corpus(root)
    for p in sorted(root.glob("*.json")):
        rep.add_input(p)
    for name, err in sorted(corpus.errors.items()):
        rep.verdict(f"load {name}", "load_corpus", "corpus integrity", False, err)
    results = [acceptance.run_criterion(num, corpus) for num, *_ in acceptance.CRITERIA]
    for r in results:
        rep.verdict(f"criterion {r.number}: {r.title}", "acceptance", r.title, r.passed, r.detail)
    rep.artifacts["timings"] = {str(r.number): "within budget" if r.seconds < r.budget else "over budget"
                                for r in results}


COMMANDS = {"validate": cmd_validate, "innerhom": cmd_innerhom, "moduletrace": cmd_moduletrace,
            "frobenius": cmd_frobenius, "tensor": cmd_tensor, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--approx", action="store_true", default=argparse.SUPPRESS,
                        help="also show floating previews of exact scalars")
    common.add_argument("--max-basis", type=int, default=argparse.SUPPRESS, metavar="N",
                        help="size guard for rings, groups and algebras")

    p = argparse.ArgumentParser(prog="pivcat", description="Inner homs, traces and Frobenius algebras "
                                "for fusion rings and pointed categories.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--approx", action="store_true")
    p.add_argument("--max-basis", type=int, default=None, metavar="N")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a ring, module, group or algebra file")
    s.add_argument("path")
    s = sub.add_parser("innerhom", parents=[common], help="inner hom of two module labels")
    s.add_argument("path")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--side", choices=("left", "right"), default="left")
    s = sub.add_parser("moduletrace", parents=[common], help="module trace on a coset module")
    s.add_argument("group", help="group file or builtin name (S3, D4, Z<n>)")
    s.add_argument("subgroup", help="comma-separated element names")
    s.add_argument("character", help="trivial, sign, a JSON file, or inline JSON")
    s = sub.add_parser("frobenius", parents=[common], help="Frobenius properties of an algebra file")
    s.add_argument("path")
    s.add_argument("character")
    s = sub.add_parser("tensor", parents=[common], help="double-coset relative tensor product")
    s.add_argument("group")
    s.add_argument("H")
    s.add_argument("K")
    s = sub.add_parser("report", parents=[common], help="run the acceptance suite over a corpus")
    s.add_argument("corpus", nargs="?", default=None)
    return p


def render_text(rep: CliReport) -> str:
    lines = [f"pivcat {rep.command}"]
    if rep.error:
        lines.append(f"error: {rep.error}")
    for v in rep.verdicts:
        mark = "PASS" if v["passed"] else "FAIL"
        line = f"  [{mark}] {v['check']} ({v['operation']})"
        if not v["passed"] and v["witness"] is not None:
            line += f"  witness: {json.dumps(v['witness'], ensure_ascii=False)}"
        lines.append(line)
    for key, val in rep.artifacts.items():
        if key == "inner_hom":
            lines.append(f"  {val}")
        else:
            lines.append(f"  {key}: {json.dumps(_jsonable(val), ensure_ascii=False)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = CliReport(args.command)
    try:
        COMMANDS[args.command](args, rep)
        rep.exit_code = 0 if rep.passed else 1
    except (MalformedInput, SizeGuardExceeded) as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        rep.exit_code = 2
    except PivcatError as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        if exc.witness is not None:
            rep.artifacts["witness"] = exc.witness
        rep.exit_code = 1
    if rep.error:
        print(rep.error, file=sys.stderr)
    if args.format == "json":
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=False, ensure_ascii=False))
    else:
        print(render_text(rep))
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
