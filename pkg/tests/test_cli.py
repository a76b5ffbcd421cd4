import json
import subprocess
import sys

import pytest

from bicircular.bicircular import bicircular_matroid
from bicircular.catalog import default_directory
from bicircular.cli import run
from bicircular.formats import load_graph, load_matroid, parse_graph, parse_matroid

DATA = default_directory()
U36 = str(DATA / "u36.matroid")
M2C3 = str(DATA / "m2c3.matroid")
MK4 = str(DATA / "mk4.matroid")


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    assert _run(capsys, "bound", "7") == (0, "74\n", "")
    assert _run(capsys, "bound", "--max-rank")[1] == "7\n"
    code, out, _ = _run(capsys, "bound", "3", "--format", "structured")
    assert json.loads(out) == {"rank": 3, "element_bound": 16}


def test_decide_writes_a_witness_that_regenerates_the_matroid(capsys, tmp_path):
    w = tmp_path / "w.graph"
    code, out, _ = _run(capsys, "decide", U36, "--witness-out", str(w))
    assert code == 0
    assert out.splitlines()[0] == "yes"
    assert "exhaustive: yes" in out
    doc = load_graph(w)
    assert bicircular_matroid(doc.loop_biased()) == load_matroid(U36)
    assert w.read_text() in out


def test_decide_structured(capsys):
    code, out, _ = _run(capsys, "decide", MK4, "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["answer"] == "no" and data["exhaustive"] is True
    assert "witness" not in data


def test_verify_excluded_minor(capsys):
    code, out, _ = _run(capsys, "verify-xm", M2C3)
    assert code == 0
    assert out.splitlines()[0] == "EXCLUDED MINOR (exhaustive)"
    code, out, _ = _run(capsys, "verify-xm", U36, "--format", "structured")
    assert json.loads(out)["excluded_minor"] is False


def test_circuits_of_a_graph_file_show_bicycle_shapes(capsys):
    code, out, _ = _run(capsys, "circuits", str(DATA / "u36.graph"), "--validate")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 16
    assert lines[-1] == "axioms: ok"
    assert all(l.endswith(")") for l in lines[:-1])
    code, out, _ = _run(capsys, "circuits", str(DATA / "u36.graph"), "--plain")
    assert out.splitlines()[0] == "1 2 3 4"


def test_rank(capsys):
    assert _run(capsys, "rank", MK4)[1] == "3\n"
    assert _run(capsys, "rank", U36, "--subset", "1,2")[1] == "2\n"


def test_framework_check(capsys):
    code, out, _ = _run(capsys, "framework-check", MK4, str(DATA / "mk4-framework.graph"))
    assert code == 0 and out.splitlines()[0] == "framework"
    code, out, _ = _run(capsys, "framework-check", MK4, str(DATA / "u36.graph"))
    assert out.splitlines()[0] == "not a framework"


def test_equiv_writes_each_representation(capsys, tmp_path):
    code, out, _ = _run(capsys, "equiv", str(DATA / "u36.graph"), "--out-dir", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.iterdir())
    assert out.startswith(f"# {len(files)} representation(s)")
    M = bicircular_matroid(load_graph(DATA / "u36.graph").graph)
    for f in files:
        assert bicircular_matroid(parse_graph(f.read_text()).graph) == M


def test_type(capsys):
    assert _run(capsys, "type", U36)[1] == "3\n"


def test_catalog_verbs(capsys):
    code, out, _ = _run(capsys, "catalog", "list")
    assert code == 0 and "M(K4)\tavailable" in out and "Pf\tmissing data" in out
    code, out, _ = _run(capsys, "catalog", "show", "U3,6")
    assert parse_matroid(out) == load_matroid(U36)
    code, out, _ = _run(capsys, "catalog", "validate", "--skip-xm")
    assert code == 0 and out.count(": ok") == 3
    assert _run(capsys, "catalog", "show", "Pf")[0] == 1


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["decide"],
    ["decide", "/no/such/file"],
    ["bound"],
    ["decide", U36, "--workers", "0"],
    ["catalog", "show"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith(("usage error:", "error:"))


def test_parse_error_exits_1_with_line(capsys, tmp_path):
    f = tmp_path / "bad.graph"
    f.write_text("edge 1 a b\nedge 1 b c\n")
    code, _, err = _run(capsys, "rank", str(f))
    assert code == 1 and f"{f}:2:" in err


def test_resource_limit_exits_2(capsys, monkeypatch):
    code, out, _ = _run(capsys, "decide", U36, "--cap", "4")
    assert code == 2 and out.startswith("RESOURCE LIMIT (non-exhaustive)")
    code, out, _ = _run(capsys, "decide", U36, "--cap", "4", "--format", "structured")
    assert json.loads(out)["error"] == "resource-limit"
    monkeypatch.setenv("BICIRCULAR_CAP", "5")
    assert _run(capsys, "decide", U36)[0] == 2


def test_output_is_byte_identical_across_runs_and_workers(capsys):
    outs = set()
    for workers in ("1", "2", "1"):
        outs.add(_run(capsys, "decide", U36, "--workers", workers)[1])
    assert len(outs) == 1
    a = _run(capsys, "verify-xm", MK4, "--format", "structured", "--workers", "1")[1]
    b = _run(capsys, "verify-xm", MK4, "--format", "structured", "--workers", "2")[1]
    assert a == b


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "bicircular.cli", "bound", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "9\n"
