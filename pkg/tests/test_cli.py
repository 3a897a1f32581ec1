import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from vattool import cli, reduction
from vattool.graph import parse_bipartite, parse_edge_list


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "vattool", *args], input=stdin, capture_output=True, text=True
    )


def call(*args):
    out = io.StringIO()
    code = cli.main(list(args), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {
        "p4": "p 4\n0 1\n1 2\n2 3\n",
        "k4": "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
        "bad": "0 1\n1 zz\n",
        "matching": "b 2 2\n0 0\n1 1\n",
        "k33": "b 3 3\n" + "".join(f"{i} {j}\n" for i in range(3) for j in range(3)),
        "path25": "".join(f"{i} {i + 1}\n" for i in range(24)),
    }
    for name, text in paths.items():
        (tmp_path / name).write_text(text)
    return {name: str(tmp_path / name) for name in paths}


def test_compute_vat_p4(files):
    code, out = call("compute", "--measure", "vat", files["p4"])
    assert code == 0
    assert json.loads(out)["value"] == {"num": 1, "den": 2}


def test_compute_uvat_on_clique_exits_2(files):
    proc = run("compute", "--measure", "uvat", files["k4"])
    assert proc.returncode == 2
    assert "complete graph" in proc.stderr and proc.stdout == ""


def test_compute_malformed_exits_1(files):
    proc = run("compute", "--measure", "vat", files["bad"])
    assert proc.returncode == 1
    assert "line 2" in proc.stderr and proc.stdout == ""


def test_size_guard_exits_3(files):
    proc = run("compute", "--measure", "vat", files["path25"])
    assert proc.returncode == 3 and proc.stdout == ""


def test_usage_errors_exit_1(files):
    assert run("compute", files["p4"]).returncode == 1
    assert run("nonsense").returncode == 1
    proc = run("verify", "--mode", "identity", "--n", "3")
    assert proc.returncode == 1 and "--seed" in proc.stderr


def test_text_format(files):
    code, out = call("compute", "--measure", "uvat", "--format", "text", files["p4"])
    assert code == 0 and "value: 1/1" in out


def test_greedy_solver(files):
    code, out = call("compute", "--measure", "uvat", "--solver", "greedy", files["p4"])
    value = json.loads(out)["value"]
    assert code == 0 and 1 <= Fraction(value["num"], value["den"]) <= 2


def test_reduce_matching(files):
    code, out = call("reduce", "--solver", "exact", "--alpha", "1", files["matching"])
    rep = json.loads(out)
    assert code == 0
    assert rep["lower_bound"] == {"num": 2, "den": 3}
    assert rep["k_exact"] == 1


def test_reduce_greedy_without_alpha(files):
    code, out = call("reduce", "--solver", "greedy", files["matching"])
    rep = json.loads(out)
    assert code == 0 and rep["upper_bound"] is None


def test_reduce_rejects_complete(files):
    proc = run("reduce", files["k33"])
    assert proc.returncode == 1 and "complete bipartite" in proc.stderr


def test_biclique(files):
    code, out = call("biclique", "--max", files["k33"])
    assert code == 0 and json.loads(out)["k"] == 3
    code, out = call("biclique", "--k", "2", files["matching"])
    assert json.loads(out) == {"k": 2, "exists": False, "witness": None}


def test_gen_complement_pipeline():
    gen = run("gen", "--n", "6", "--k", "3", "--p", "0.2", "--seed", "1")
    assert gen.returncode == 0
    b = parse_bipartite(gen.stdout)
    assert (b.n1, b.n2) == (6, 6)
    comp = run("complement", stdin=gen.stdout)
    assert comp.returncode == 0
    g = parse_edge_list(comp.stdout)
    assert g.n == 12
    assert len(g.edges) == 2 * 15 + 36 - len(b.edges)


def test_verify_identity_exhaustive():
    code, out = call("verify", "--mode", "identity", "--n", "2", "--exhaustive")
    summary = json.loads(out)
    assert code == 0 and summary["failed"] == 0 and summary["total"] == 14


def test_verify_sandwich_random():
    code, out = call("verify", "--mode", "sandwich", "--n", "5", "--trials", "200", "--seed", "7")
    assert code == 0 and json.loads(out)["failed"] == 0


def test_verify_detects_sabotage(monkeypatch):
    real = reduction.min_bk_ratio

    def broken(b, **kw):
        value, w = real(b, **kw)
        return value + Fraction(1, 7), w

    monkeypatch.setattr(reduction, "min_bk_ratio", broken)
    code, out = call("verify", "--mode", "identity", "--n", "3", "--exhaustive")
    summary = json.loads(out)
    assert code == cli.EXIT_FAILURES
    assert summary["failed"] == summary["total"] > 0
    # counterexamples are replayable bipartite files
    parse_bipartite(summary["counterexamples"][0])


def test_verify_jsonl_stream():
    code, out = call("verify", "--mode", "bounds", "--n", "2", "--exhaustive", "--jsonl")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 15
    assert all(json.loads(line)["ok"] for line in lines[:-1])


def test_version():
    proc = run("--version")
    assert proc.returncode == 0 and "format 1" in proc.stdout
