import json
import subprocess
import sys
from pathlib import Path

import pytest

from loccol.cli import run
from loccol.coloring import Coloring, parse_coloring, serialize_coloring, verify_locating
from loccol.families import comb, complete_nary, star
from loccol.tree import Tree, parse_tree, serialize_tree

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def test_family_emits_tree(capsys):
    assert run(["family", "star", "--params", "n=5"]) == 0
    assert parse_tree(capsys.readouterr().out) == star(5)


def test_family_random_is_seeded(capsys):
    run(["family", "random", "--params", "n=30,max_degree=4", "--seed", "3"])
    a = capsys.readouterr().out
    run(["family", "random", "--params", "n=30,max_degree=4", "--seed", "3"])
    assert capsys.readouterr().out == a
    assert parse_tree(a).max_degree <= 4


def test_family_bad_params(capsys):
    assert run(["family", "star", "--params", "x"]) == 1
    assert run(["family", "star", "--params", "m=3"]) == 1


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 1


def test_color_and_verify_round_trip(write, tmp_path, capsys):
    tree = write("c.tree", serialize_tree(comb(10)))
    out = str(tmp_path / "c.col")
    assert run(["color", "--input", tree, "--output", out]) == 0
    c = parse_coloring(Path(out).read_text())
    assert serialize_coloring(c) == Path(out).read_text()
    assert run(["verify", "--input", tree, "--coloring", out]) == 0
    assert "OK" in capsys.readouterr().out


def test_color_emits_bounds_and_trace(write, tmp_path, capsys):
    tree = write("t.tree", serialize_tree(complete_nary(3, 3)))
    trace_dir = tmp_path / "trace"
    code = run(["color", "--input", tree, "--emit-bounds", "--format", "json-lines", "--trace", str(trace_dir)])
    assert code == 0
    captured = capsys.readouterr()
    report = json.loads(captured.err)
    assert report["upper"] == report["base_path_cost"] + sum(report["per_stage"])
    stages = sorted(trace_dir.iterdir())
    assert len(stages) == 4
    assert parse_tree(stages[-1].read_text()).n == 1


@pytest.mark.parametrize(
    "coloring, code",
    [
        (Coloring(3, (3, 2, 1, 2)), 0),
        (Coloring(2, (1, 1, 2, 1)), 2),
        (Coloring(2, (1, 2, 1, 2)), 3),
        (Coloring(4, (1, 2, 1, 3)), 4),
    ],
)
def test_verify_exit_codes(write, coloring, code):
    tree = write("p4.tree", "n 4\ne 0 1\ne 1 2\ne 2 3\n")
    col = write("p4.col", serialize_coloring(coloring))
    assert run(["verify", "--input", tree, "--coloring", col]) == code


def test_verify_json_witness(write, capsys):
    tree = write("p4.tree", "n 4\ne 0 1\ne 1 2\ne 2 3\n")
    col = write("p4.col", serialize_coloring(Coloring(2, (1, 2, 1, 2))))
    run(["verify", "--input", tree, "--coloring", col, "--format", "json-lines"])
    rec = json.loads(capsys.readouterr().out)
    assert rec["verdict"] == "COLLISION" and len(rec["witness"]) == 2


def test_malformed_input_exit_1(write):
    bad = write("bad.tree", "n 3\ne 0 1\n")
    assert run(["color", "--input", bad]) == 1
    assert run(["color", "--input", "/nonexistent/x.tree"]) == 1


def test_exact_outputs_witness(write, tmp_path, capsys):
    tree = write("s.tree", serialize_tree(star(5)))
    out = str(tmp_path / "w.col")
    assert run(["exact", "--input", tree, "--output", out]) == 0
    assert "chi_L: 5" in capsys.readouterr().out
    w = parse_coloring(Path(out).read_text())
    assert w.k == 5 and verify_locating(star(5), w).ok


def test_exact_budget_refusal(write, capsys):
    tree = write("t.tree", serialize_tree(complete_nary(2, 4)))
    assert run(["exact", "--input", tree, "--budget", "50", "--no-symmetry"]) == 5
    assert "UNKNOWN" in capsys.readouterr().out


def test_exact_budget_env(write, monkeypatch, capsys):
    tree = write("t.tree", serialize_tree(complete_nary(2, 4)))
    monkeypatch.setenv("LOCCOL_BUDGET", "50")
    assert run(["exact", "--input", tree]) == 5


def test_exact_rejects_rays(write):
    tree = write("r.tree", "n 1\nr 0\n")
    assert run(["exact", "--input", tree]) == 1


def test_reduce_report(write, capsys):
    tree = write("t.tree", serialize_tree(complete_nary(3, 4)))
    assert run(["reduce", "--input", tree, "--format", "json-lines"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert lines[-1] == {"stages": 4, "terminal": "SINGLETON"}
    assert all("l_max" in rec for rec in lines[:4])


def test_reduce_binary_tree_text(write, capsys):
    tree = write("t.tree", serialize_tree(complete_nary(2, 4)))
    assert run(["reduce", "--input", tree]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "stages=3  terminal=PATH"


def test_color_refuses_when_budget_runs_out(monkeypatch, write):
    import loccol.paint as paint
    from loccol.tree import reduction_sequence

    monkeypatch.setattr(paint, "reduction_sequence", lambda t, m=None: reduction_sequence(t, 1))
    tree = write("t.tree", serialize_tree(complete_nary(3, 3)))
    assert run(["color", "--input", tree]) == 5
    assert run(["bounds", "--input", tree]) == 5


def test_bounds(write, capsys):
    tree = write("s.tree", serialize_tree(star(6)))
    assert run(["bounds", "--input", tree]) == 0
    out = capsys.readouterr().out
    assert "upper: 6" in out and "used: 6" in out


def test_witness_regular(capsys):
    assert run(["witness", "regular", "--k", "3", "--t", "3"]) == 0
    out = capsys.readouterr().out
    assert "n: 14" in out and "21952" in out and "24576" in out


def test_witness_gtree_json(capsys):
    assert run(["witness", "gtree", "--n", "2", "--t", "2", "--format", "json-lines"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert (rec["n"], rec["codes"], rec["leaves"]) == (9, 324, 512)


def test_witness_missing_argument():
    assert run(["witness", "regular", "--t", "2"]) == 1


def test_table1_matches_fixture(capsys, monkeypatch):
    monkeypatch.delenv("LOCCOL_BUDGET", raising=False)
    assert run(["table1", "--params", "default"]) == 0
    first = capsys.readouterr().out
    assert first == (FIXTURES / "table1.txt").read_text()
    run(["table1", "--params", "default"])
    assert capsys.readouterr().out == first


def test_table1_rejects_other_params():
    assert run(["table1", "--params", "big"]) == 1


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize_tree(star(4))))
    assert run(["bounds"]) == 0
    assert "used: 4" in capsys.readouterr().out


def test_console_script_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "loccol.cli", "witness", "gtree", "--n", "2", "--t", "1"],
        capture_output=True, text=True, check=True,
    )
    assert "n: 3" in out.stdout


def test_emitted_colorings_reverify(write, tmp_path):
    for i, t in enumerate([star(7), complete_nary(2, 3), comb(3), Tree.from_edges(1, [], {0: 2})]):
        tree = write(f"{i}.tree", serialize_tree(t))
        out = str(tmp_path / f"{i}.col")
        assert run(["color", "--input", tree, "--output", out]) == 0
        assert run(["verify", "--input", tree, "--coloring", out]) == 0
