import csv
import io
import json
import subprocess
import sys

import pytest

from peripherality.cli import main

P4 = "4 3\n0 1\n1 2\n2 3\n"


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_measure(capsys, monkeypatch):
    code, text, _ = run(capsys, monkeypatch, ["gen", "balanced-spider", "3", "2"])
    assert code == 0 and text.splitlines()[0] == "7 6"
    code, out, _ = run(capsys, monkeypatch, ["measure", "--measure", "spr"], stdin=text)
    assert code == 0 and json.loads(out) == {"spr": 126}


def test_measure_selected(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["measure", "--measure", "Mo", "--measure", "peri"], stdin=P4)
    assert json.loads(out) == {"Mo": 4, "peri": 4}


def test_measure_full_report(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["measure"], stdin=P4)
    assert code == 0
    json.loads(out)
    code, out, _ = run(capsys, monkeypatch, ["measure", "--format", "csv"], stdin=P4)
    assert out.splitlines()[0].startswith("kind,id,deg,ecc")


def test_measure_disconnected_is_domain_error(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["measure"], stdin="4 2\n0 1\n2 3\n")
    assert code == 1 and "error" in err


def test_bad_graph_text(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["measure"], stdin="3 1\n0 9\n")
    assert code == 1


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["measure", "--format", "xml"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_gen_bad_params(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["gen", "path", "zero"])
    assert code == 1


def test_oracle(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["oracle", "complete-bipartite", "2", "3", "Mo"])
    d = json.loads(out)
    assert code == 0 and d["closed_form"] == d["computed"] == 6 and d["agree"]
    code, _, _ = run(capsys, monkeypatch, ["oracle", "clique-star", "2", "3", "Mo"])
    assert code == 1


def test_rank(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["rank", "--kind", "edge"], stdin=P4)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["edge", "edeg", "eecc", "eperi", "espr", "Mo"],
                    ["0 , 1", "2", "2", "1", "2", "2"],
                    ["1 , 2", "1", "1", "1", "1", "1"],
                    ["2 , 3", "2", "2", "1", "2", "2"]]


def test_verify_small(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, monkeypatch, ["verify", "--claims", "tree_max_mo,tree_min_mo", "--n", "4..7"])
    rep = json.loads(out)
    assert code == 0 and rep["summary"]["pass"] == 2
    code, _, _ = run(capsys, monkeypatch, ["verify", "--claims", "nope"])
    assert code == 1


def test_scan_needs_long(capsys, monkeypatch, tmp_path):
    code, _, err = run(capsys, monkeypatch, ["scan", "--objective", "Mo", "--n", "13"])
    assert code == 1 and "--long" in err
    code, out, _ = run(capsys, monkeypatch, ["scan", "--objective", "Mo", "--n", "5..6", "--checkpoint", str(tmp_path)])
    rows = json.loads(out)
    assert [r["optimum"] for r in rows] == [12, 20]
    assert (tmp_path / "checkpoint_Mo_6.txt").exists()


def test_reduce_and_clique(capsys, monkeypatch, tmp_path):
    k4 = "5 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
    code, out, _ = run(capsys, monkeypatch, ["reduce", "--kind", "H"], stdin=k4)
    assert code == 0 and json.loads(out)["kind"] == "H"
    code, out2, _ = run(capsys, monkeypatch, ["clique", "--k", "4", "--constraint", "Mo="], stdin=out)
    assert json.loads(out2) == {"k": 4, "constraint": "Mo=", "found": True, "clique": [0, 1, 2, 3]}
    code, out, _ = run(capsys, monkeypatch, ["reduce", "--validate", "J/Mo!=", "--k", "4"], stdin=k4)
    assert code == 0 and json.loads(out)["agrees"]
    code, _, _ = run(capsys, monkeypatch, ["reduce"], stdin=k4)
    assert code == 1


def test_mech(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, monkeypatch, ["mech", "diff", "--dataset", "mozart4", "--kind", "edge"])
    assert code == 0 and json.loads(out)["mismatches"] == []
    code, out, _ = run(capsys, monkeypatch, ["mech", "graph"])
    assert len(out.splitlines()) == 20
    f = tmp_path / "r.txt"
    f.write_text("A + B -> C\nB + C -> D\n")
    code, out, _ = run(capsys, monkeypatch, ["mech", "rank", "--in", str(f), "--format", "json"])
    assert code == 0 and set(json.loads(out)["ranks"]) == {"A", "B", "C"}
    f.write_text("A + B -> C\nB C\n")
    code, _, err = run(capsys, monkeypatch, ["mech", "rank", "--in", str(f)])
    assert code == 1 and "line 2" in err


def test_random(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["random", "exact", "--n", "4"])
    d = json.loads(out)
    assert d["expected_irr"] == "9/4" and d["enumerated"] == "9/4"
    code, out, _ = run(capsys, monkeypatch, ["--threads", "2", "random", "irr", "--n", "20", "--trials", "10"])
    a = json.loads(out)
    code, out, _ = run(capsys, monkeypatch, ["random", "irr", "--n", "20", "--trials", "10"])
    assert json.loads(out) == a
    code, _, _ = run(capsys, monkeypatch, ["random", "irr", "--n", "20", "--trials", "0"])
    assert code == 1
    code, _, _ = run(capsys, monkeypatch, ["random", "irr", "--n", "20", "--trials", "5000"])
    assert code == 1


def test_out_file(capsys, monkeypatch, tmp_path):
    dest = tmp_path / "g.txt"
    code, out, _ = run(capsys, monkeypatch, ["gen", "cycle", "5", "--out", str(dest)])
    assert code == 0 and out == "" and dest.read_text().startswith("5 5")


def test_console_script_pipeline():
    gen = subprocess.run([sys.executable, "-m", "peripherality.cli", "gen", "star", "4"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "peripherality.cli", "measure", "--measure", "Mo"],
                         input=gen.stdout, capture_output=True, text=True, check=True)
    assert json.loads(res.stdout) == {"Mo": 12}
