import json
import subprocess
import sys

import pytest

from fgh import coding
from fgh.cli import dispatch, main
from fgh.search import bounded_search
from fgh.syntax import parse_formula


def ok(argv):
    code, doc = dispatch(argv)
    assert code == 0, doc
    assert doc["status"] == "ok" and doc["schema_version"] == 1
    return doc["payload"]


def test_classify():
    out = ok(["classify", "E x. (x * x = 4)"])
    assert out["least_class"] == "SigmaBang(1)"
    assert "Sigma(1)" in out["memberships"]


def test_eval():
    out = ok(["eval", "E x. (x * x = 4)", "--fuel", "10"])
    assert out["verdict"] == "True" and out["fuel_used"] <= 10


def test_encode_decode():
    code = int(ok(["encode", "0 = 0"])["code"])
    assert code == coding.encode(parse_formula("0 = 0"))
    assert parse_formula(ok(["decode", str(code)])["formula"]) == parse_formula("0 = 0")


def test_decode_bad_code_is_domain_error():
    code, doc = dispatch(["decode", "2"])
    assert code == 1 and doc["status"] == "error" and doc["diagnostics"]


def test_decode_not_a_number_is_usage_error(capsys):
    assert dispatch(["decode", "abc"])[0] == 2


def test_unknown_theory():
    code, doc = dispatch(["rosser", "--theory", "nope"])
    assert code == 1 and doc["status"] == "error"


@pytest.mark.parametrize("argv", [
    ["rosser"],
    ["fgh-fixpoint", "--sigma", "E x. (x = 0)", "--level", "0"],
    ["dual", "leq", "--sigma", "E x. (x = 0)"],
    ["dual", "notless", "--sigma", "E x. (x = 0)"],
    ["dense", "--lower", "E x. (x = x + 1)", "--upper", "E x. (x = 3)"],
    ["predicate", "omega-box", "--level", "1"],
    ["predicate", "boxbox-old", "--level", "2"],
])
def test_constructions_report_class(argv):
    out = ok(argv)
    assert out["formula"] and out["class"]


def test_search_and_check_proof(tmp_path):
    out = ok(["search", "--goal", "(0 = 1) -> (0 = 1)", "--budget", "50"])
    assert out["result"] == "Found"
    p = bounded_search("toyEA", parse_formula("(0 = 1) -> (0 = 1)"), 50)
    path = tmp_path / "p.jsonl"
    path.write_text(p.to_jsonl())
    assert ok(["check-proof", str(path)])["verdict"] == "True"
    assert ok(["search", "--goal", "0 = 1", "--budget", "100"])["result"] == "NotFound"


def test_check_proof_rejects(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({"kind": "axiom", "formula": "0 = 1", "refs": []}) + "\n")
    code, doc = dispatch(["check-proof", str(path)])
    assert code == 1


def test_gl_and_glp(tmp_path):
    assert ok(["gl", "decide", "[]([]p -> p) -> []p"])["verdict"] == "Valid"
    out = ok(["gl", "decide", "[]p -> p"])
    assert out["verdict"] == "Invalid" and out["countermodel"]["worlds"] == 1
    path = tmp_path / "m.json"
    path.write_text(json.dumps([{"kind": "mono", "formula": "[0]p -> [1]p"}]))
    assert ok(["glp", "check", str(path)])["verdict"] == "Valid"
    out = ok(["glp", "realize", "[1]p", "--assign", "p=0 = 0"])
    assert out["class"] == "Sigma(2)"


def test_unknown_suite():
    code, doc = dispatch(["suite", "nope"])
    assert code == 1 and doc["status"] == "error"


def test_suite_report(tmp_path):
    code, doc = dispatch(["suite", "predicates", "--report", str(tmp_path)])
    assert code == 0
    names = {p.split("/")[-1] for p in doc["payload"]["report"]}
    assert {"predicates.csv", "predicates.png"} <= names
    assert (tmp_path / "predicates.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "predicates.csv").read_text().count("\n") > 1


def test_seed_env_determinism(monkeypatch):
    monkeypatch.setenv("FGH_SEED", "7")
    a = ok(["suite", "coding", "--samples", "20"])
    b = ok(["suite", "coding", "--samples", "20"])
    a.pop("seconds"), b.pop("seconds")
    assert a == b and a["seed"] == 7
    monkeypatch.setenv("FGH_SEED", "8")
    assert ok(["suite", "coding", "--samples", "20"])["seed"] == 8


def test_main_prints_json(capsys):
    assert main(["--pretty", "classify", "0 = 0"]) == 0
    assert json.loads(capsys.readouterr().out)["payload"]["least_class"] == "Delta0"


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "fgh.cli", "encode", "0 = 0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["payload"]["code"] == "17891585"
