import json
import subprocess
import sys

import pytest

from johansson import fixtures, surgery
from johansson.cli import main
from johansson.io import parse_diagram, parse_presentation


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in fixtures.names():
        path = tmp_path / f"{name}.jdiag"
        path.write_text(fixtures.text(name))
        out[name] = str(path)
    broken = fixtures.text("star_L31").replace("cross 1: +", "cross 1: -")
    (tmp_path / "broken.jdiag").write_text(broken)
    out["broken"] = str(tmp_path / "broken.jdiag")
    (tmp_path / "garbled.jdiag").write_text("jdiag 1\npairs: a/a*\nword a: 1.x\n")
    out["garbled"] = str(tmp_path / "garbled.jdiag")
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_h1_star(capsys, files):
    assert run(capsys, "h1", files["star_L31"]) == (0, "Z_3\n", "")


@pytest.mark.parametrize("name, expected", [("shima_a", "0"), ("audi", "Z")])
def test_h1_fixtures(capsys, files, name, expected):
    code, out, _ = run(capsys, "h1", files[name])
    assert code == 0 and out.strip() == expected


def test_validate_pass(capsys, files):
    code, out, _ = run(capsys, "validate", files["audi"])
    assert code == 0
    assert "passes all checked necessary conditions" in out and "faces: 8" in out


def test_validate_broken(capsys, files):
    code, out, _ = run(capsys, "validate", files["broken"])
    assert code == 1
    assert "[euler]" in out


def test_validate_json(capsys, files):
    target = files["dir"] / "report.json"
    code, _, _ = run(capsys, "validate", files["star_L31"], "--json", target)
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["h1"]["name"] == "Z_3" and doc["kind"] == "jdiag"


def test_parse_error(capsys, files):
    code, _, err = run(capsys, "h1", files["garbled"])
    assert code == 2 and "E_LEX" in err


def test_missing_file_and_usage(capsys, files):
    assert run(capsys, "h1", files["dir"] / "nope.jdiag")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "census")[0] == 2
    assert run(capsys, "census", "--triple-points", "3")[0] == 2
    assert run(capsys, "census", "--triple-points", "2", "--max-pairs", "4")[0] == 2


def test_invalid_input_to_h1(capsys, files):
    code, _, err = run(capsys, "h1", files["broken"])
    assert code == 1 and "euler" in err


def test_classify_and_group(capsys, files):
    code, out, _ = run(capsys, "classify", files["shima_a"])
    assert code == 0
    assert out.splitlines() == ["T1  (a,a,a*)  I.1   a a a^-1", "T2  (a,a,a*)  I.1   a a a^-1"]
    code, out, _ = run(capsys, "group", files["audi"])
    assert out.strip() == "< a, b | a a b, a a b >"


def test_faces(capsys, files):
    code, out, _ = run(capsys, "faces", files["star_L31"])
    assert code == 0 and len(out.splitlines()) == 8


def test_sum(capsys, files):
    target = files["dir"] / "sum.jdiag"
    code, out, _ = run(capsys, "sum", files["star_L31"], files["star_L31"],
                       "--site1", "2:1", "--site2", "3", "-o", target)
    assert code == 0 and "H1=Z_3⊕Z_3" in out
    d = parse_diagram(target.read_text())
    assert d.p == 6
    assert run(capsys, "h1", target)[1] == "Z_3⊕Z_3\n"


def test_sum_bad_site(capsys, files):
    target = files["dir"] / "sum.jdiag"
    assert run(capsys, "sum", files["audi"], files["audi"], "--site1", "x", "-o", target)[0] == 2
    code, _, err = run(capsys, "sum", files["audi"], files["audi"], "--site1", "40", "-o", target)
    assert code == 1 and "site1" in err


def test_sum_internal_error(capsys, files, monkeypatch):
    monkeypatch.setattr(surgery, "TEMPLATE", surgery.PipingTemplate(new_pairs=2))
    target = files["dir"] / "sum.jdiag"
    assert run(capsys, "sum", files["audi"], files["audi"], "-o", target)[0] == 3


def test_census(capsys, files):
    code, out, _ = run(capsys, "census", "--triple-points", "4")
    assert code == 0
    assert "Z_3⊕Z_3" not in out
    assert "census p=4 k<=3: 41 presentations" in out


def test_census_json_and_dump(capsys, files):
    j1, j2 = files["dir"] / "a.json", files["dir"] / "b.json"
    dump = files["dir"] / "all.hpres"
    run(capsys, "census", "--triple-points", "4", "--json", j1, "--dump", dump)
    run(capsys, "census", "--triple-points", "4", "--json", j2, "--workers", "2")
    assert j1.read_bytes() == j2.read_bytes()
    chunks = dump.read_text().split("\n\n")
    assert len(chunks) == 41
    assert all(parse_presentation(c).p == 4 for c in chunks)


def test_render(capsys, files):
    target = files["dir"] / "g.dot"
    assert run(capsys, "render", files["star_L31"], "--dot", target)[0] == 0
    assert target.read_text().count(" -- ") == 6


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "johansson", "h1", files["audi"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "Z\n"
