"""Command line interface: payload shapes, exit codes, determinism."""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from convexip.cli import main

SQUARE = {"kind": "polytope",
          "vertices": [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]}
UNIT_SQUARE = {"kind": "polytope",
               "vertices": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]}
TRIANGLE = {"kind": "polytope",
            "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}
BALL = {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj) if isinstance(obj, dict) else obj)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------------ ip

def test_ip_square_pin(files, capsys):
    p = files("sq.json", SQUARE)
    code, out, err = run(capsys, "ip", p, p)
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["inner"] == pytest.approx(2.0 + 4.0 / np.pi, abs=1e-12)
    assert obj["distance"] == 0.0
    assert "3.2732395447351" in out


def test_ip_with_matrix_spec(files, capsys):
    iv = files("iv.json", {"kind": "polytope", "vertices": [[0.0], [1.0]]})
    jv = files("jv.json", {"kind": "polytope", "vertices": [[0.0], [2.0]]})
    spec = files("m.json", {"kind": "matrix1d",
                            "m": [[1.0, 0.0], [0.0, 1.0]]})
    code, out, _ = run(capsys, "ip", iv, jv, "--ip", spec)
    assert code == 0
    assert json.loads(out)["inner"] == 2.0


def test_ip_dimension_mismatch(files, capsys):
    a = files("a.json", SQUARE)
    b = files("b.json", {"kind": "point", "coords": [0.0]})
    code, out, err = run(capsys, "ip", a, b)
    assert code == 2 and out == ""
    assert "dimension" in err


def test_missing_file_is_reported(capsys):
    code, _, err = run(capsys, "ip", "/nonexistent/x.json",
                       "/nonexistent/y.json")
    assert code == 2
    assert "x.json" in err


def test_invalid_json_offset(files, capsys):
    bad = files("bad.json", "{\"kind\": ")
    code, _, err = run(capsys, "ip", bad, bad)
    assert code == 2
    assert "invalid JSON" in err and "offset" in err


def test_malformed_body_is_reported(files, capsys):
    bad = files("b.json", {"kind": "poly"})
    good = files("g.json", SQUARE)
    code, _, err = run(capsys, "ip", bad, good)
    assert code == 2
    assert "b.json" in err


# --------------------------------------------------------------- reconstruct

def test_reconstruct_cherry(files, capsys, tmp_path):
    tree = files("t.nwk", "((A,B),(C,D));")
    leaves = files("l.json", {"leaves": {
        "A": {"kind": "point", "coords": [0.0, 0.0]},
        "B": {"kind": "point", "coords": [8.0, 0.0]},
        "C": {"kind": "point", "coords": [0.0, 8.0]},
        "D": {"kind": "point", "coords": [8.0, 8.0]},
    }})
    svg_path = str(tmp_path / "tree.svg")
    code, out, err = run(capsys, "reconstruct", tree, leaves,
                         "--svg", svg_path)
    assert code == 0, err
    obj = json.loads(out)
    assert set(obj) == {"lambda", "ancestors", "length"}
    assert set(obj["ancestors"]) == {"v1", "v2"}
    assert obj["ancestors"]["v1"]["coords"] == pytest.approx([4.0, 2.0])
    assert obj["ancestors"]["v2"]["coords"] == pytest.approx([4.0, 6.0])
    assert obj["length"] == pytest.approx(96.0, abs=1e-9)
    assert obj["lambda"]["v1"]["A"] == pytest.approx(0.375, abs=1e-12)
    doc = ET.parse(svg_path).getroot()
    assert doc.tag.endswith("svg")


def test_reconstruct_bad_newick(files, capsys):
    tree = files("t.nwk", "((A,B),C;")
    leaves = files("l.json", {"leaves": {}})
    code, _, err = run(capsys, "reconstruct", tree, leaves)
    assert code == 2
    assert "t.nwk" in err and "offset 8" in err


def test_reconstruct_nonbinary_needs_flag(files, capsys):
    tree = files("t.nwk", "(A,B,C,D);")
    leaves = files("l.json", {"leaves": {
        n: {"kind": "point", "coords": [float(i), 0.0]}
        for i, n in enumerate("ABCD")}})
    code, _, err = run(capsys, "reconstruct", tree, leaves)
    assert code == 2 and "binary" in err
    code, out, _ = run(capsys, "reconstruct", tree, leaves,
                       "--no-strict-binary")
    assert code == 0
    obj = json.loads(out)
    assert obj["ancestors"]["v1"]["coords"] == pytest.approx([1.5, 0.0])


def test_reconstruct_missing_leaf(files, capsys):
    tree = files("t.nwk", "((A,B),(C,D));")
    leaves = files("l.json", {"leaves": {
        "A": {"kind": "point", "coords": [0.0, 0.0]}}})
    code, _, err = run(capsys, "reconstruct", tree, leaves)
    assert code == 2
    assert "misses" in err


def test_reconstruct_out_file(files, capsys, tmp_path):
    tree = files("t.nwk", "(A,B,C);")
    leaves = files("l.json", {"leaves": {
        n: {"kind": "point", "coords": [float(i), 0.0]}
        for i, n in enumerate("ABC")}})
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "reconstruct", tree, leaves,
                       "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["length"] == pytest.approx(2.0)


# ----------------------------------------------------------------- rendering

def test_segment_svg_frames(files, capsys):
    a = files("a.json", SQUARE)
    b = files("b.json", BALL)
    code, out, _ = run(capsys, "segment", a, b, "-k", "3")
    assert code == 0
    root = ET.fromstring(out)
    assert root.tag.endswith("svg")
    assert out.count("<path") >= 3


def test_segment_single_frame_is_start(files, capsys):
    a = files("a.json", UNIT_SQUARE)
    b = files("b.json", BALL)
    code, out, _ = run(capsys, "segment", a, b, "-k", "1")
    assert code == 0
    assert out.count("<path") == 1


def test_plane_lattice(files, capsys):
    a = files("a.json", UNIT_SQUARE)
    b = files("b.json", TRIANGLE)
    code, out, _ = run(capsys, "plane", a, b, "--steps", "3")
    assert code == 0
    ET.fromstring(out)
    # nine panels; the origin cell degenerates to a dot marker
    assert out.count("<path") + out.count("<circle") >= 9


def test_render_rejects_1d(files, capsys):
    a = files("a.json", {"kind": "polytope", "vertices": [[0.0], [1.0]]})
    code, _, err = run(capsys, "segment", a, a)
    assert code == 2
    assert "2D" in err


# ------------------------------------------------- axioms and counterexample

def test_axioms_pass_and_repeat_identically(files, capsys):
    code, out1, _ = run(capsys, "axioms", "--trials", "40", "--seed", "7")
    assert code == 0
    assert json.loads(out1)["passed"] is True
    code, out2, _ = run(capsys, "axioms", "--trials", "40", "--seed", "7")
    assert out2 == out1


def test_axioms_matrix_spec(files, capsys):
    spec = files("m.json", {"kind": "matrix1d",
                            "m": [[2.0, 1.0], [1.0, 3.0]]})
    code, out, _ = run(capsys, "axioms", "--trials", "60", "--ip", spec)
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["axioms"]["cauchy_schwarz"]["worst"] >= -1e-9


def test_counterexample_gap_digits(capsys):
    code, out, _ = run(capsys, "counterexample")
    assert code == 0
    obj = json.loads(out)
    assert obj["gap"] == pytest.approx(6.0 * np.sqrt(2.0) - 8.25, abs=1e-12)
    assert "0.23528137423857" in out
    assert obj["bodies"]["a"]["kind"] == "ball"


# --------------------------------------------- diversity, classify, steiner

def test_diversity_two_points(files, capsys):
    pts = files("p.json", {"points": [[0.0, 0.0], [1.0, 0.0]]})
    code, out, _ = run(capsys, "diversity", pts)
    assert code == 0
    obj = json.loads(out)
    assert obj["diversity"] == pytest.approx(1.0, abs=1e-12)
    assert obj["size"] == 2


def test_classify_three_verdicts(files, capsys):
    sq = files("sq.json", UNIT_SQUARE)
    shifted = files("sh.json", {"kind": "sum", "terms": [
        UNIT_SQUARE, {"kind": "point", "coords": [2.0, 0.0]}]})
    grown = files("gr.json", {"kind": "sum", "terms": [UNIT_SQUARE, TRIANGLE]})
    b = files("b.json", BALL)
    t = files("t.json", TRIANGLE)

    code, out, _ = run(capsys, "classify", shifted, sq)
    assert code == 0
    assert json.loads(out)["class"] == "translation"

    code, out, _ = run(capsys, "classify", grown, sq)
    obj = json.loads(out)
    assert obj["class"] == "ray"
    assert obj["lambda"] == pytest.approx(0.0, abs=1e-9)

    code, out, _ = run(capsys, "classify", b, t)
    obj = json.loads(out)
    assert obj["class"] == "segment"
    assert sorted([obj["t_a"], obj["t_b"]]) == pytest.approx([0.0, 1.0],
                                                             abs=1e-9)


def test_classify_coincident_is_an_error(files, capsys):
    sq = files("sq.json", UNIT_SQUARE)
    code, _, err = run(capsys, "classify", sq, sq)
    assert code == 2
    assert "coincide" in err


def test_steiner_inside(files, capsys):
    t = files("t.json", TRIANGLE)
    code, out, _ = run(capsys, "steiner", t)
    assert code == 0
    obj = json.loads(out)
    assert obj["inside"] is True
    assert len(obj["steiner"]) == 2


# ------------------------------------------------------------------ plumbing

def test_pretty_output(files, capsys):
    p = files("sq.json", SQUARE)
    code, plain, _ = run(capsys, "ip", p, p)
    code, pretty, _ = run(capsys, "ip", p, p, "--pretty")
    assert plain.count("\n") == 1
    assert pretty.count("\n") > 4
    assert json.loads(pretty) == json.loads(plain)


def test_global_flags_accepted_before_subcommand(files, capsys):
    p = files("sq.json", SQUARE)
    code, out, _ = run(capsys, "--grid", "512", "ip", p, p)
    assert code == 0
    json.loads(out)


def test_usage_error_exits_nonzero(capsys):
    with pytest.raises(SystemExit):
        main(["not-a-command"])
