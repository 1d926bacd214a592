import csv
import io
import json
import subprocess
import sys

import pytest

from hyperopic.cli import BAD_INPUT, FAILED, LIMIT, OK, run
from hyperopic.graphs import parse_edge_list, parse_graph6, petersen, to_graph6
from hyperopic.solver import clear_cache


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_solve_petersen_json():
    code, text = call("solve", "--family", "petersen", "--json")
    rec = json.loads(text)
    assert code == OK
    assert (rec["c"], rec["c_H"], rec["c_H_relation"]) == (3, 3, "=")
    assert rec["n"] == 10 and rec["metrics"]["diameter"] == 2
    assert rec["limits"]["max_positions"] > 0


def test_solve_human_and_csv():
    code, text = call("solve", "--family", "cycle", "--n", "5")
    assert code == OK and "c_H = 2" in text and "c = 2" in text
    code, text = call("solve", "--family", "path", "--n", "4", "--csv")
    row = next(csv.DictReader(io.StringIO(text)))
    assert code == OK and row["c_H"] == "1"


def test_solve_single_k():
    code, text = call("solve", "--family", "clique", "--n", "5", "--k", "2", "--json",
                      "--no-classical")
    rec = json.loads(text)
    assert code == OK and rec["c_H_relation"] == ">" and rec["c"] is None


def test_solve_from_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, text = call("solve", "--input", str(f), "--json")
    assert code == OK and json.loads(text)["c_H"] == 2
    f6 = tmp_path / "p.g6"
    f6.write_text(to_graph6(petersen()) + "\n")
    code, text = call("solve", "--input", str(f6), "--format", "graph6", "--json", "--no-classical")
    assert code == OK and json.loads(text)["c_H"] == 3


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--family", "path", "--input", "x"],
    ["solve", "--family", "nonsense"],
    ["solve", "--input", "/no/such/file"],
    ["solve", "--family", "petersen", "--q", "3"],
    ["chain", "--target", "3/4"],
    ["chain", "--target", "pi"],
    ["strategy", "verify", "tree", "--family", "cycle", "--n", "5"],
    ["strategy", "verify", "join_isolated", "--family", "cycle", "--n", "4"],
    ["bogus"],
])
def test_bad_input(argv, tmp_path):
    code, _ = call(*argv)
    assert code == BAD_INPUT


def test_disconnected_input(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("4 2\n0 1\n2 3\n")
    assert call("solve", "--input", str(f))[0] == BAD_INPUT


def test_limit_exit_code():
    clear_cache()
    code, text = call("solve", "--family", "grid", "--m", "4", "--n", "4", "--max-positions", "30",
                      "--json")
    assert code == LIMIT
    rec = json.loads(text)
    assert rec["limit_hit"] and rec["c_H_relation"] == ">="


def test_strategy_verify():
    code, text = call("strategy", "verify", "diameter2_maxdeg", "--family", "petersen", "--json")
    v = json.loads(text)
    assert code == OK and v["outcome"] == "capture" and v["claim"] == f"c_H <= {v['k']}"
    code, text = call("strategy", "verify", "join_isolated", "--family", "cycle", "--n", "4",
                      "--join-coclique", "2")
    assert code == OK and "capture" in text


def test_strategy_run_transcript():
    code, text = call("strategy", "run", "tree", "--family", "path", "--n", "6")
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == OK and recs[-1]["observation"] == "captured"
    code, text = call("strategy", "run", "dominating_set", "--family", "clique", "--n", "6",
                      "--robber", "random", "--robber-seed", "3")
    assert code == OK and json.loads(text.splitlines()[-1])["observation"] == "captured"


def test_strategy_escape_exit_code():
    # two cops on K6 leave the robber a hiding pair forever
    code, _ = call("strategy", "verify", "dominating_set", "--family", "clique", "--n", "6",
                   "--k", "2")
    assert code == FAILED


def test_chain_csv():
    code, text = call("chain", "--target", "1/3", "--terms", "3")
    lines = text.splitlines()
    assert code == OK and lines[0] == "n,p_n,i,j,x_added,y_added,c_H,|V|,density"
    assert len(lines) == 5 and lines[-1].endswith("1/3")


def test_chain_json_crosscheck(capsys):
    code, text = call("chain", "--target", "golden", "--terms", "4", "--emit", "json",
                      "--crosscheck", "--crosscheck-max", "9")
    data = json.loads(text)
    assert code == OK and len(data["elements"]) == 5
    assert "crosscheck" in capsys.readouterr().err


def test_generate():
    code, text = call("generate", "--family", "grid", "--m", "2", "--n", "3")
    g = parse_edge_list(text)
    assert code == OK and (g.n, g.m) == (6, 7)
    code, text = call("generate", "--family", "incidence_plane", "--q", "2", "--out-format", "graph6")
    assert parse_graph6(text.strip()).n == 14


def test_gap_search_small():
    code, text = call("gap-search", "--max-n", "5")
    assert code == OK and "0 with c_H - c = 2 found" in text


def test_verify_theorems_subset():
    code, text = call("verify-theorems", "--only", "9")
    assert code == OK and "[PASS]" in text and "1/1 checks passed" in text


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "hyperopic.cli", "--help"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "solve" in res.stdout
