import io
import json

import pytest

from stratcomb.cli import parse_spec_text, run
from stratcomb.errors import SpecError
from stratcomb.poset import parse_dot_edges


def write(tmp_path, text, name="g.spec"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


GL2 = "family=GL\nrank=2\nsigma=identity\nmu=1,0\n"
GL3 = "# comment line\nfamily=GL\nrank=3   # trailing comment\nmu=1,0,0\n"


def test_parse_spec_text():
    spec, opts = parse_spec_text("family=GL\nrank=3\nsigma=perm:2,1\nmu=1,0,0\n")
    assert spec.family == "GL" and spec.rank == 3 and spec.sigma == (2, 1)
    assert opts["mu"] == (1, 0, 0)
    spec, _ = parse_spec_text("family=GL\nrank=2\nsigma=opposite\n")
    assert spec.sigma == "opposite"


@pytest.mark.parametrize("text,line", [
    ("family=GL\nrank=x\n", 2),
    ("family=GL\nrank=2\nbogus=1\n", 3),
    ("family=GL\nrank=2\nsigma=flip\n", 3),
    ("family=GL\nrank 2\n", 2),
    ("family=GL\nrank=2\nrank=3\n", 3),
    ("family=GL\nrank=2\nmu=1,a\n", 3),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(SpecError) as exc:
        parse_spec_text(text)
    assert exc.value.line == line and f"line {line}" in str(exc.value)


def test_describe_gl3(tmp_path):
    code, out, _ = call(["describe", "--spec", write(tmp_path, GL3)])
    data = json.loads(out)
    assert code == 0 and data["weyl_order"] == 6 and data["pi1_coinvariants"] == "Z"
    assert len(data["roots"]) == 6


def test_bgmu_gl2(tmp_path):
    code, out, _ = call(["bgmu", "--spec", write(tmp_path, GL2)])
    data = json.loads(out)
    assert code == 0
    assert data["elements"] == [{"nu": ["1/2", "1/2"], "kappa": 1}, {"nu": [1, 0], "kappa": 1}]
    assert data["relations"] == [[0, 1]] and data["max"] == 1 and data["basic"] == 0


@pytest.mark.parametrize("cmd", ["bgmu", "eoposet"])
def test_dot_edges_equal_json_covers(tmp_path, cmd):
    spec = write(tmp_path, "family=GL\nrank=4\nmu=2,1,0,0\n")
    _, js, _ = call([cmd, "--spec", spec])
    _, dot, _ = call([cmd, "--spec", spec, "--format", "dot"])
    assert parse_dot_edges(dot) == {tuple(e) for e in json.loads(js)["covers"]}


def test_eo2newton_gl2(tmp_path):
    code, out, _ = call(["eo2newton", "--spec", write(tmp_path, GL2)])
    rows = json.loads(out)
    assert code == 0
    assert [(r["w"], r["nu"], r["is_bmax"]) for r in rows] == [([], ["1/2", "1/2"], False), ([1], [1, 0], True)]


def test_hncheck(tmp_path):
    code, out, _ = call(["hncheck", "--spec", write(tmp_path, "family=GL\nrank=3\nmu=2,1,0\n")])
    assert code == 0 and json.loads(out)["applicable"] is True
    spec = write(tmp_path, "family=GL\nrank=3\nmu=2,1,0\nlevi=1,1,0\nb0=4,-1,0\n", "h.spec")
    data = json.loads(call(["hncheck", "--spec", spec])[1])
    assert data["applicable"] is False
    assert [v["ok"] for v in data["conditions"].values()] == [True, True, False]


def test_verify_loop_deterministic(tmp_path, monkeypatch):
    spec = write(tmp_path, GL2)
    argv = ["verify-loop", "--spec", spec, "--seed", "5", "--samples", "6", "--N", "2", "--m-schedule", "1,2,4"]
    a, b = call(argv), call(argv)
    assert a[0] == 0 and a[1] == b[1]
    reports = json.loads(a[1])
    assert [r["experiment"] for r in reports] == ["A", "B", "C"]
    assert all(set(r) >= {"experiment", "params", "seed", "samples", "found", "unresolved", "hard_failures",
                          "witnesses"} for r in reports)


def test_verify_loop_exhaustive_text(tmp_path):
    code, out, _ = call(["verify-loop", "--spec", write(tmp_path, GL2), "--N", "2", "--m-schedule", "1,2",
                         "--experiment", "A", "--exhaustive", "--format", "text"])
    assert code == 0 and "hard_failures=0" in out


def test_verify_loop_hard_failure_exit_code(tmp_path, monkeypatch):
    import stratcomb.loopgrp.experiments as ex

    def fake(**kw):
        return [{"experiment": "A", "seed": 0, "samples": 1, "found": 0, "unresolved": 0, "hard_failures": 1,
                 "witnesses": []}]

    monkeypatch.setattr(ex, "verify_mu_conjugacy", fake)
    code, _, _ = call(["verify-loop", "--spec", write(tmp_path, GL2), "--experiment", "A"])
    assert code == 3


def test_out_file(tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = call(["bgmu", "--spec", write(tmp_path, GL2), "--out", str(target)])
    assert code == 0 and out == "" and json.loads(target.read_text())["max"] == 1


@pytest.mark.parametrize("argv,code", [
    (["nonsense", "--spec", "x"], 1),
    (["bgmu"], 1),
    (["bgmu", "--spec", "/no/such/file"], 1),
    (["eo2newton", "--spec", "SPEC", "--format", "dot"], 1),
])
def test_usage_errors(tmp_path, argv, code):
    argv = [write(tmp_path, GL2) if a == "SPEC" else a for a in argv]
    assert call(argv)[0] == code


def test_spec_and_computation_errors(tmp_path):
    code, _, err = call(["bgmu", "--spec", write(tmp_path, "family=GL\nrank=2\nmu=0,1,5\n")])
    assert code == 1 and "line 3" in err
    code, _, err = call(["bgmu", "--spec", write(tmp_path, "family=GL\nrank=2\nmu=0,1\n")])
    assert code == 2 and "not dominant" in err
    code, _, err = call(["verify-loop", "--spec", write(tmp_path, "family=Sp\nrank=4\nmu=1,0\n")])
    assert code == 1


def test_console_entry_point(tmp_path):
    import subprocess
    import sys

    spec = write(tmp_path, GL2)
    proc = subprocess.run([sys.executable, "-m", "stratcomb.cli", "bgmu", "--spec", spec, "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "2 classes" in proc.stdout
