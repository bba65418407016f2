from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from pivcat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out), err


# --- validate -------------------------------------------------------------------------

def test_validate_fibonacci(capsys, corpus_dir):
    code, rep, _ = run_json(capsys, "validate", str(corpus_dir / "ring_fibonacci.json"))
    assert code == 0 and rep["schema"] == "pivcat/1"
    assert rep["artifacts"]["fp_dimensions"] == ["1", "1.61803398875"]
    assert rep["inputs"] == {"ring_fibonacci.json": rep["inputs"]["ring_fibonacci.json"]}
    assert all(v["operation"] and v["anchor"] for v in rep["verdicts"])


def test_validate_negative_controls(capsys, data_dir):
    code, out, err = run(capsys, "validate", str(data_dir / "broken_duality.json"))
    assert code == 1 and "DualityViolation" in err and "DualityViolation" in out
    code, _, err = run(capsys, "validate", str(data_dir / "not_json.txt"))
    assert code == 2 and "MalformedInput" in err


@pytest.mark.parametrize("name", ["nimrep_ising_regular.json", "group_s3.json", "algebra_ka3.json",
                                  "bimodule_ka3_coset_12.json"])
def test_validate_other_kinds(capsys, corpus_dir, name):
    code, rep, _ = run_json(capsys, "validate", str(corpus_dir / name))
    assert code == 0 and rep["verdicts"]


def test_size_guard_flag(capsys, corpus_dir):
    code, _, err = run(capsys, "validate", str(corpus_dir / "group_d4.json"), "--max-basis", "4")
    assert code == 2 and "SizeGuardExceeded" in err


# --- innerhom ---------------------------------------------------------------------------

def test_innerhom(capsys, corpus_dir):
    code, out, _ = run(capsys, "innerhom", str(corpus_dir / "nimrep_s3_cosets_a3.json"), "A3", "A3")
    assert code == 0 and "e + (123) + (132)" in [line.strip() for line in out.splitlines()]
    code, rep, _ = run_json(capsys, "innerhom", str(corpus_dir / "nimrep_fibonacci_regular.json"), "τ", "τ",
                            "--side", "right")
    assert rep["artifacts"]["inner_hom"] == "1 + τ"
    code, _, err = run(capsys, "innerhom", str(corpus_dir / "nimrep_fibonacci_regular.json"), "τ", "σ")
    assert code == 1 and "LabelUnknown" in err


# --- moduletrace -------------------------------------------------------------------------

def test_moduletrace(capsys, corpus_dir):
    s3 = str(corpus_dir / "group_s3.json")
    code, rep, _ = run_json(capsys, "moduletrace", s3, "e,(123),(132)", "sign")
    assert code == 0 and rep["artifacts"]["exists"] is True
    assert rep["artifacts"]["theta"] == {"H": "1", "H(12)": "-1"}
    code, rep, _ = run_json(capsys, "moduletrace", s3, "e,(12)", "sign")
    assert code == 0 and rep["artifacts"]["exists"] is False
    assert rep["artifacts"]["infeasible"]["product"] == "-1"
    code, rep, _ = run_json(capsys, "moduletrace", "D4", "e,r2", "trivial")
    assert rep["artifacts"]["exists"] is True
    code, _, err = run(capsys, "moduletrace", s3, "e,(123)", "sign")
    assert code == 1 and "NotASubgroup" in err


def test_moduletrace_inline_character(capsys):
    # g |> H = H g^-1 = Hg2, so theta(Hg2) = kappa(g)^-1 = z^2
    code, rep, _ = run_json(capsys, "moduletrace", "Z3", "e", '{"m": 3, "exponents": {"g": 1}}')
    assert code == 0 and rep["artifacts"]["theta"] == {"H": "1", "Hg": "z", "Hg2": "-1 - z"}
    code, _, err = run(capsys, "moduletrace", "Z3", "e", "{oops")
    assert code == 2


# --- frobenius -----------------------------------------------------------------------------

def test_frobenius(capsys, corpus_dir):
    code, rep, _ = run_json(capsys, "frobenius", str(corpus_dir / "algebra_kz2.json"), "trivial")
    fr = rep["artifacts"]["frobenius"]
    assert code == 0 and fr["is_special"] and (fr["beta_A"], fr["beta_1"]) == ("2", "1")
    _, rep, _ = run_json(capsys, "frobenius", str(corpus_dir / "algebra_ka3.json"), "sign")
    assert rep["artifacts"]["frobenius"]["is_symmetric"] is True
    code, rep, _ = run_json(capsys, "frobenius", str(corpus_dir / "algebra_k12.json"), "sign")
    assert code == 0 and rep["artifacts"]["frobenius"]["is_symmetric"] is False
    code, _, _ = run(capsys, "frobenius", str(corpus_dir / "group_s3.json"), "sign")
    assert code == 2


# --- tensor ---------------------------------------------------------------------------------

def test_tensor(capsys):
    code, rep, _ = run_json(capsys, "tensor", "S3", "e,(123),(132)", "e,(123),(132)")
    assert code == 0 and len(rep["artifacts"]["basis"]) == 2
    assert rep["artifacts"]["rieffel_pairing"] == rep["artifacts"]["hom_pairing"]
    _, rep, _ = run_json(capsys, "tensor", "S3", "e,(12)", "e,(123),(132)")
    assert len(rep["artifacts"]["basis"]) == 1
    _, rep, _ = run_json(capsys, "tensor", "D4", "e", "e")
    assert len(rep["artifacts"]["basis"]) == 8
    code, _, _ = run(capsys, "tensor", "S3", "e,(123)", "e")
    assert code == 1


# --- report ----------------------------------------------------------------------------------

def test_report_bundled(capsys):
    code, rep, _ = run_json(capsys, "report")
    assert code == 0
    assert len([v for v in rep["verdicts"] if v["check"].startswith("criterion")]) == 11


def test_report_corrupted_and_empty(capsys, corpus_dir, tmp_path):
    bad = tmp_path / "corpus"
    shutil.copytree(corpus_dir, bad)
    (bad / "ring_ising.json").write_text('{"labels": [')
    code, rep, _ = run_json(capsys, "report", str(bad))
    failed = [v["check"] for v in rep["verdicts"] if not v["passed"]]
    assert code == 1 and "load ring_ising.json" in failed
    empty = tmp_path / "empty"
    empty.mkdir()
    code, _, err = run(capsys, "report", str(empty))
    assert code == 2 and "no data files" in err


def test_report_uses_environment(capsys, corpus_dir, tmp_path, monkeypatch):
    monkeypatch.setenv("PIVCAT_CORPUS", str(tmp_path))
    code, _, _ = run(capsys, "report")
    assert code == 2


def test_json_is_deterministic(capsys, corpus_dir):
    args = ("--format", "json", "tensor", str(corpus_dir / "group_s3.json"), "e,(12)", "e,(13)")
    main(list(args))
    first = capsys.readouterr().out
    main(list(args))
    assert capsys.readouterr().out == first


def test_module_entry_point(corpus_dir):
    proc = subprocess.run([sys.executable, "-m", "pivcat", "validate", str(corpus_dir / "ring_ising.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "[PASS]" in proc.stdout
