import csv
import io
import json
from fractions import Fraction

import pytest

from cantor_repr import BinSeq, cmts_value
from cantor_repr.cli import fixed, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_represent_center_node(tmp_path, capsys, corpus_dir):
    pts = write(tmp_path, "q.json", [{"path": [], "node": "c"}])
    code, out, _ = run(["represent", "--pattern", str(corpus_dir / "three_od.json"), "--points", pts], capsys)
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1 and rows[0]["fiber"] == ["(0)", "1(0)", "11(0)"]


def test_represent_arc_midpoint(tmp_path, capsys, corpus_dir):
    pts = write(tmp_path, "q.json", {"arc": 1, "t": "1/2"})
    code, out, _ = run(["represent", "--pattern", str(corpus_dir / "arc.json"), "--points", pts], capsys)
    assert code == 0
    assert json.loads(out)[0]["fiber"] == ["0(1)", "1(0)"]


def test_represent_table(capsys, corpus_dir):
    code, out, _ = run(["represent", "--pattern", str(corpus_dir / "three_od.json"), "--samples", "2"], capsys)
    assert code == 0 and len(json.loads(out)) == 7


def test_represent_malformed_pattern(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", '{"type": "graph",\n  "nodes": [')
    code, _, err = run(["represent", "--pattern", bad, "--samples", "2"], capsys)
    assert code == 2
    assert "line 2" in err


def test_represent_unresolvable_points(tmp_path, capsys, corpus_dir):
    pts = write(tmp_path, "q.json", [{"node": "c"}, {"path": [4], "node": "c"}, {"arc": 9, "t": "1/3"}])
    code, out, err = run(["represent", "--pattern", str(corpus_dir / "three_od.json"), "--points", pts], capsys)
    assert code == 1
    assert len(json.loads(out)) == 1
    assert err.count("unresolvable point") == 2


def test_represent_needs_points_or_samples(capsys, corpus_dir):
    with pytest.raises(SystemExit) as exc:
        main(["represent", "--pattern", str(corpus_dir / "arc.json")])
    assert exc.value.code == 2


def test_missing_file_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["represent", "--pattern", "/nonexistent.json", "--samples", "2"])
    assert exc.value.code == 2


def test_verify_depth_zero_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--depth", "0"])
    assert exc.value.code == 2


def test_verify_injected_fault(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, _, err = run(["verify", "--inject-fault", "literal-subdivision", "--out", str(out)], capsys)
    assert code == 1
    report = json.loads(out.read_text())
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failed] == ["injected.literal-subdivision"]
    assert "uncovered" in failed[0]["witness"]
    assert "FAIL" in err


def test_embed_single_arc(capsys, corpus_dir):
    code, out, _ = run(["embed", "--pattern", str(corpus_dir / "arc.json"), "--samples", "2", "--precision", "4"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    for r in rows:
        assert Fraction(r["cmts"]) == cmts_value(BinSeq.parse(r["sequence"]))
    assert rows[1]["sequence"] == "(1)" and rows[1]["cmts"] == "1/1" and rows[1]["decimal"] == "1.0000"
    mid = [r for r in rows if r["t"] == "1/2"]
    assert [(r["sequence"], r["cmts"]) for r in mid] == [("0(1)", "1/3"), ("1(0)", "2/3")]


def test_fixed_rounding():
    assert fixed(Fraction(2, 3), 3) == "0.667"
    assert fixed(Fraction(1), 3) == "1.000"
    assert fixed(Fraction(1, 8), 2) == "0.12"  # half to even
    assert fixed(Fraction(3, 8), 2) == "0.38"
    assert fixed(Fraction(0), 1) == "0.0"
