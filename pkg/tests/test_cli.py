import csv
import json
import subprocess
import sys

import pytest

from sickit.cli import parse_graph_arg, run, UsageError
from sickit.graph6 import emit_graph6, read_graph6_file
from sickit.generators import cycle, hypercube, petersen


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


def test_graph_argument_forms(tmp_path):
    assert parse_graph_arg("petersen") == petersen()
    assert parse_graph_arg("hypercube:3") == hypercube(3)
    assert parse_graph_arg("torus:sqr:5x5").n == 25
    assert parse_graph_arg("cp:cycle:3,path:2").num_edges == 9
    assert parse_graph_arg(emit_graph6(cycle(5))) == cycle(5)
    f = tmp_path / "c6.g6"
    f.write_text(emit_graph6(cycle(6)) + "\n")
    assert parse_graph_arg(str(f)) == cycle(6)
    j = tmp_path / "c4.json"
    j.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
    assert parse_graph_arg(str(j)) == cycle(4)
    for bad in ("cp:cycle:4", "torus:sqr:5by5", "hypercube:x", "~~not~~"):
        with pytest.raises(UsageError):
            parse_graph_arg(bad)


def test_solve_hypercube_4(capsys):
    code, out, _ = call(capsys, "solve", "--graph", "hypercube:4")
    assert code == 0 and out.strip() == "11"


def test_solve_json_and_count(capsys):
    code, data = call_json(capsys, "solve", "--graph", "hypercube:3", "--count")
    assert code == 0
    assert data["status"] == "optimal" and data["size"] == 6 and data["iso_classes"] == 1
    assert data["code"] == "SIC" and data["n"] == 8


def test_solve_infeasible_exits_one(capsys):
    code, out, _ = call(capsys, "solve", "--graph", "path:3")
    assert code == 1 and out.strip() == "infeasible"


def test_solve_budget_flag_and_env(capsys, monkeypatch):
    code, data = call_json(capsys, "solve", "--graph", "hypercube:4", "--max-nodes", "2")
    assert code == 1 and data["status"] == "budget_exceeded"
    monkeypatch.setenv("SICKIT_BUDGET_NODES", "2")
    code, data = call_json(capsys, "solve", "--graph", "hypercube:4")
    assert code == 1 and data["status"] == "budget_exceeded"
    monkeypatch.setenv("SICKIT_BUDGET_NODES", "lots")
    code, _, err = call(capsys, "solve", "--graph", "hypercube:4")
    assert code == 2 and "SICKIT_BUDGET_NODES" in err


def test_verify(capsys):
    code, data = call_json(capsys, "verify", "--graph", "cycle:4", "--set", "0,1,2,3")
    assert code == 0 and data["valid"] and data["violations"] == []
    code, data = call_json(capsys, "verify", "--graph", "cycle:4", "--set", "0,1,2", "--code", "ic")
    assert code == 0 and data["code"] == "IC"
    code, out, _ = call(capsys, "verify", "--graph", "cycle:4", "--set", "0,1")
    assert code == 1 and out.startswith("SIC: INVALID")
    code, _, err = call(capsys, "verify", "--graph", "cycle:4", "--set", "0,9")
    assert code == 2 and "error" in err


def test_verify_unknown_code(capsys):
    code, _, err = call(capsys, "verify", "--graph", "cycle:4", "--set", "0", "--code", "xyz")
    assert code == 2


def test_exists(capsys):
    code, data = call_json(capsys, "exists", "--graph", "cycle:5")
    assert code == 0 and data["exists"]
    code, data = call_json(capsys, "exists", "--graph", "complete:4")
    assert code == 1 and not data["exists"] and data["blocking_pairs"]
    code, data = call_json(capsys, "exists", "--graph", "path:4", "--code", "ic")
    assert code == 0 and data["code"] == "IC"


def test_locate(capsys):
    code, data = call_json(capsys, "locate", "--graph", "cycle:4", "--set", "0,1,2,3", "--alarms", "0,1,2")
    assert code == 0 and data == {"result": "located", "vertices": [1]}
    code, data = call_json(capsys, "locate", "--graph", "cycle:4", "--set", "0,1,2,3", "--alarms", "0,1")
    assert code == 1 and data["result"] == "inconsistent"
    code, _, _ = call(capsys, "locate", "--graph", "cycle:4", "--set", "0,2", "--alarms", "1")
    assert code == 2
    code, data = call_json(capsys, "locate", "--graph", "cycle:4", "--set", "0,2", "--alarms", "0,2")
    assert code == 1 and data["result"] == "ambiguous" and set(data["vertices"]) == {1, 3}


FORMULA = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"


def test_reduce_writes_files(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(FORMULA)
    out, meta = tmp_path / "g.g6", tmp_path / "g.json"
    code, text, _ = call(capsys, "reduce", "--cnf", str(cnf), "--out", str(out), "--meta", str(meta))
    assert code == 0 and "K = 50" in text
    (g,) = read_graph6_file(str(out))
    assert (g.n, g.num_edges) == (14 * 3 + 8 * 2, 21 * 3 + 14 * 2)
    data = json.loads(meta.read_text())
    assert data["K"] == 50 and data["literal_vertices"]["1"] == 0


def test_reduce_bad_inputs(tmp_path, capsys):
    code, _, _ = call(capsys, "reduce", "--cnf", str(tmp_path / "missing.cnf"))
    assert code == 2
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 3 1\n1 2 0\n")
    code, _, err = call(capsys, "reduce", "--cnf", str(bad))
    assert code == 2 and "error" in err


def test_selfcheck(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(FORMULA)
    code, data = call_json(capsys, "selfcheck", "--cnf", str(cnf), "--unsat", "--random", "2", "--seed", "3")
    assert code == 0 and data["agree"] and len(data["cases"]) == 4
    assert data["cases"][1]["sat_oracle"] is False
    code, _, _ = call(capsys, "selfcheck")
    assert code == 2


def test_torus_fixed_dims(capsys):
    code, data = call_json(capsys, "torus", "--family", "hex", "--dims", "6x6")
    assert code == 0 and data["reached"] and data["target"] == "2/3"
    assert data["tori"][0]["density"] == "2/3"
    code, out, _ = call(capsys, "torus", "--family", "sqr", "--dims", "5x5", "--show")
    assert code == 1 and "15/25 = 3/5" in out and "#" in out


def test_torus_scan_stops_at_target(capsys):
    code, data = call_json(capsys, "torus", "--family", "kng")
    assert code == 0 and [t["dims"] for t in data["tori"]] == [[5, 6], [6, 6]]
    assert data["lower_bound"] == "1/3"


def test_torus_bad_dims(capsys):
    code, _, _ = call(capsys, "torus", "--family", "hex", "--dims", "5x6")
    assert code == 2


def test_torus_unfinished(capsys):
    code, data = call_json(capsys, "torus", "--family", "sqr", "--dims", "6x6", "--max-nodes", "1")
    assert code == 1 and data["tori"][0]["status"] == "budget_exceeded"


def test_sweep_outputs(tmp_path, capsys):
    csv_path, jsonl_path = tmp_path / "t.csv", tmp_path / "t.jsonl"
    code, out, _ = call(capsys, "sweep", "--cubic", "4,6,8", "--csv", str(csv_path),
                        "--jsonl", str(jsonl_path), "--workers", "2")
    assert code == 0
    rows = list(csv.reader(csv_path.open()))
    assert rows[1:] == [["4", "1", "0", "", "", "1"], ["6", "2", "2", "6", "6", "1"], ["8", "5", "4", "6", "7", "1"]]
    assert len(jsonl_path.read_text().splitlines()) == 8


def test_sweep_corpus_file(tmp_path, capsys):
    f = tmp_path / "c.g6"
    f.write_text("\n".join(emit_graph6(g) for g in (cycle(4), cycle(5), petersen())) + "\n")
    code, data = call_json(capsys, "sweep", "--corpus", str(f))
    assert code == 0
    assert [(r["n"], r["with_sic"], r["min"]) for r in data["rows"]] == [(4, 1, 4), (5, 1, 5), (10, 1, 8)]
    code, _, _ = call(capsys, "sweep")
    assert code == 2
    code, _, _ = call(capsys, "sweep", "--cubic", "5")
    assert code == 2


def test_hypercube(capsys):
    code, data = call_json(capsys, "hypercube", "--dim", "4", "--iso")
    assert code == 0 and data["sic"] == 11 and data["density"] == "11/16"
    assert data["iso_classes"] >= 1
    code, out, _ = call(capsys, "hypercube", "--dim", "3", "-v")
    assert code == 0 and out.startswith("SIC(Q3) = 6") and "witness:" in out


def test_argparse_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["torus", "--family", "oct"])
    assert exc.value.code == 2


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "sickit.cli", "solve", "--graph", "petersen"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.strip() == "8"
