import json
import subprocess
import sys

import pytest

from qdt import oracle
from qdt.cli import EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_OK, main
from qdt.gallery import get
from qdt.grel import GRel
from qdt.report import Report

QDT = [sys.executable, "-m", "qdt"]


def run(*args, stdin=None):
    return subprocess.run(QDT + list(args), input=stdin, capture_output=True, text=True, timeout=60)


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


@pytest.fixture
def q3(tmp_path):
    return write(tmp_path, "q3.json", get("Q3").to_json())


@pytest.fixture
def g3(tmp_path):
    return write(tmp_path, "g3.json", get("G3").to_json())


def test_pipe_gallery_reflexivize_classify():
    g = run("gallery", "G3")
    r = run("reflexivize", stdin=g.stdout)
    c = run("classify", stdin=r.stdout)
    assert (g.returncode, r.returncode, c.returncode) == (0, 0, 0)
    assert c.stdout.startswith("quasimetric")
    assert GRel.from_json(json.loads(r.stdout)) == get("Q3")


def test_pipe_gallery_check():
    g = run("gallery", "Q3")
    c = run("check", "rdomaineqs", stdin=g.stdout)
    assert c.returncode == EXIT_OK and "holds" in c.stdout


def test_emitted_json_round_trips(capsys):
    for name in ("G3", "Q5", "X3NR", "SPLIT", "CHAIN3", "STRICT2", "METRIC2"):
        assert main(["gallery", name]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert GRel.from_json(data) == get(name)
        assert GRel.from_json(data).to_json() == data


@pytest.mark.parametrize(
    "args",
    [
        ["classify", "{q3}"],
        ["reflexivize", "--lower", "{q3}"],
        ["compose", "{q3}", "{q3}"],
        ["kan", "{q3}", "{q3}"],
        ["balls", "--center", "1", "--radius", "1/2", "{q3}"],
        ["topology", "--kinds", "upper-ball", "{q3}"],
        ["directed", "{q3}"],
        ["ideal", "{q3}"],
        ["sup", "--subset", "0,1/2", "{q3}"],
        ["max", "--subset", "0,1/2", "{q3}"],
        ["complete", "{q3}"],
        ["wbd", "--mode", "max", "--domain", "{q3}"],
        ["hausdorff", "--lower", "{q3}"],
        ["fb", "1:1/4", "1/2:0", "{q3}"],
        ["check", "hemiprop", "{q3}"],
        ["check", "--list"],
        ["sweep", "FdY", "--budget", "5"],
        ["--format", "json", "classify", "{q3}"],
        ["classify", "--format", "json", "{q3}"],
    ],
)
def test_success_exit_codes(args, q3, capsys):
    argv = [a.format(q3=q3) for a in args]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out.strip()


def test_json_format_is_valid(q3, capsys):
    assert main(["classify", "--format", "json", q3]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["is_hemimetric"]


@pytest.mark.parametrize(
    "content, args",
    [
        ('{"carrier": ["a", "b"], "matrix": [["0", "-1"], ["0", "0"]]}', ["classify"]),
        ("{not json", ["classify"]),
        ('{"carrier": ["a"], "matrix": [["0", "0"]]}', ["classify"]),
        ('{"source": ["a", "b"], "target": ["a"], "matrix": [["0"], ["1"]]}', ["classify"]),
        ('{"carrier": ["a"]}', ["classify"]),
        (None, ["balls", "--center", "zz", "--radius", "1"]),
        (None, ["sup", "--subset", "0,zz"]),
        (None, ["fb", "1:-1", "0:0"]),
        (None, ["check", "no-such-check"]),
        (None, ["complete"]),
        (None, ["wbd", "--mode", "topological", "--kind", "xx"]),
    ],
)
def test_input_error_exit_codes(content, args, tmp_path, g3, capsys):
    path = write(tmp_path, "in.json", content) if content is not None else g3
    assert main(args + [path]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    assert main(["gallery", "NOPE"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
    assert main(["no-such-command"]) == EXIT_INPUT
    capsys.readouterr()


def test_counterexample_exit_code(monkeypatch, g3, capsys):
    def zero_diagonal(inst):
        rep = Report("zero diagonal")
        bad = [x for x in range(inst.d.n) if inst.d.table[x][x] != 0]
        rep.add("every diagonal entry is 0", not bad, bad[:1] or None)
        return rep

    spec = oracle.CheckSpec("planted", "every diagonal entry is 0", zero_diagonal)
    monkeypatch.setitem(oracle.REGISTRY, "planted", spec)
    assert main(["check", "planted", g3]) == EXIT_COUNTEREXAMPLE
    assert main(["sweep", "planted", "--kinds", "relation", "--budget", "10", "--format", "json"]) == EXIT_COUNTEREXAMPLE
    out = capsys.readouterr().out
    assert '"status": "counterexample"' in out


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK
    capsys.readouterr()
