import io
import json
from pathlib import Path

import pytest

from splice_forge.cli import run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out=out)
    return code, out.getvalue()


GOLDEN_CASES = [
    ("validate_trefoil.json", ["validate", DATA / "trefoil.sd"], 0),
    ("normalize_cable.json", ["normalize", DATA / "cable.sd"], 0),
    ("link_cable.json", ["link", DATA / "cable.sd"], 0),
    ("fiber_nonfibered.json", ["fiber-check", DATA / "nonfibered.sd"], 0),
    ("tight_trefoil.json", ["tight", DATA / "trefoil.sd"], 0),
    ("tight_hopf.json", ["tight", DATA / "hopf.sd"], 0),
    ("tight_hopf.txt", ["tight", DATA / "hopf.sd", "--format", "text"], 0),
    ("tight_hopf_mixed.json", ["tight", DATA / "hopf_mixed.sd", "--per-piece"], 0),
    ("tight_nonfibered.json", ["tight", DATA / "nonfibered.sd"], 3),
    ("hat_cable.txt", ["hat", DATA / "cable.sd", "--format", "text"], 0),
    ("hat_trefoil.dot", ["hat", DATA / "trefoil.sd", "--format", "dot"], 0),
    ("cut_cable.json", ["cut", DATA / "cable.sd", "--edge", "u,v"], 0),
    ("milnor_hopf.json", ["milnor-fg", DATA / "hopf.sd", "--g", "a1"], 0),
    ("export_cable.json", ["export", DATA / "cable.sd", "--format", "json"], 0),
    ("node_data_235.json", ["node-data", "--weights", "2,3,5"], 0),
    ("check_s3_cable.json", ["check-s3", DATA / "cable.sd"], 0),
    ("invert_hopf_mixed.sd", ["invert", DATA / "hopf_mixed.sd"], 0),
    ("splice_trefoil_hopf.sd", ["splice", DATA / "trefoil.sd", "a1", DATA / "hopf.sd", "a2"], 0),
    ("tight_assume_trefoil.json", ["tight", "--assume-s3", DATA / "trefoil.sd"], 0),
    ("contact_cable_tw.txt", ["contact-verify", DATA / "cable.sd", "--style", "tw", "--format", "text"], 0),
]


@pytest.mark.parametrize("golden, argv, code", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(golden, argv, code):
    got_code, text = call(*argv)
    assert got_code == code
    assert text == (GOLDEN / golden).read_text(encoding="utf-8")


def test_output_is_deterministic():
    a = call("tight", DATA / "hopf_mixed.sd", "--per-piece")
    b = call("tight", DATA / "hopf_mixed.sd", "--per-piece")
    assert a == b


def test_syntax_error_exit_code(tmp_path):
    bad = tmp_path / "bad.sd"
    bad.write_text("node v;\nbound v:2\n")
    code, text = call("validate", bad)
    assert code == 2
    err = json.loads(text)
    assert err["error"] == "syntax" and err["line"] == 3


def test_invalid_diagram_exit_code(tmp_path):
    bad = tmp_path / "bad.sd"
    bad.write_text("node v; bound v:4; arrow v:6 m=1;")
    code, text = call("validate", bad)
    assert code == 2 and json.loads(text)["ok"] is False
    code, text = call("tight", bad)
    assert code == 2 and json.loads(text)["error"] == "invalid diagram"


def test_usage_errors():
    assert call("frobnicate")[0] == 1
    assert call("tight")[0] == 1
    assert call("tight", DATA / "missing.sd")[0] == 1
    assert call("cut", DATA / "cable.sd", "--edge", "u")[0] == 1


def test_s3_gate_and_override(tmp_path):
    f = tmp_path / "poincare.sd"
    f.write_text("node v; bound v:2; bound v:3; arrow v:5 m=1;")
    code, text = call("tight", f)
    assert code == 3 and json.loads(text)["error"] == "precondition"
    code, text = call("tight", f, "--assume-s3")
    assert code == 0 and json.loads(text)["verdict"] == "Tight"


def test_json_input_and_stdin(monkeypatch):
    _, exported = call("export", DATA / "trefoil.sd", "--format", "json")
    monkeypatch.setattr("sys.stdin", io.StringIO(exported))
    code, text = call("tight", "-")
    assert code == 0 and json.loads(text)["verdict"] == "Tight"


def test_splice_inverts_cut(tmp_path):
    _, text = call("cut", DATA / "cable.sd", "--edge", "u,v")
    halves = json.loads(text)
    left, right = tmp_path / "l.json", tmp_path / "r.json"
    left.write_text(json.dumps(halves["left"]))
    right.write_text(json.dumps(halves["right"]))
    code, text = call("splice", left, halves["left_leaf"], right, halves["right_leaf"])
    assert code == 0
    from splice_forge.diagram import isomorphic
    from splice_forge.dsl import parse_diagram

    assert isomorphic(parse_diagram(text), parse_diagram((DATA / "cable.sd").read_text()))


@pytest.mark.parametrize("fmt", ["json", "svg", "csv"])
def test_contact_formats(fmt):
    code, text = call("contact-verify", DATA / "trefoil.sd", "--style", "lemma33", "--format", fmt, "--grid", "200")
    assert code == 0
    if fmt == "json":
        assert json.loads(text)["min_contact"] > 0
    elif fmt == "svg":
        assert text.startswith("<svg") and "polyline" in text
    else:
        assert text.splitlines()[0] == "label,role,r,x,y"


def test_lemma33_lutz_reported():
    code, text = call("contact-verify", DATA / "hopf_mixed.sd", "--style", "lemma33")
    assert code == 0
    assert [x["component"] for x in json.loads(text)["lutz"]] == ["a2"]


def test_invert_and_normalize_formats():
    code, text = call("invert", DATA / "hopf_mixed.sd")
    assert code == 0 and "m=-1" in text and "m=1" in text
    code, text = call("normalize", DATA / "cable.sd", "--format", "dsl")
    assert text == "node u;\nbound u:2;\nbound u:3;\narrow u:1 m=1;\n"


def test_node_data_from_diagram():
    code, text = call("node-data", DATA / "trefoil.sd", "--vertex", "v")
    assert code == 0 and json.loads(text)["A"] == 6
