from __future__ import annotations

import json
import subprocess
import sys

import pytest

from spex.cli import main
from spex.graph6 import graph6_decode, graph6_encode
from spex.graphs import path_graph, s_nk, s_nk_plus


def run_main(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_g6(capsys):
    code, out, _ = run_main(capsys, "construct", "--family", "s_nk_plus", "--n", "20", "--k", "2")
    assert code == 0
    assert out.strip() == graph6_encode(s_nk_plus(20, 2))
    assert graph6_decode(out.strip()) == s_nk_plus(20, 2)


def test_construct_json_and_table(capsys):
    code, out, _ = run_main(capsys, "construct", "--family", "cycle", "--n", "6", "--out", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 6 and obj["m"] == 6
    code, out, _ = run_main(capsys, "construct", "--family", "turan", "--n", "7", "--k", "2", "--out", "table")
    assert code == 0 and "turan" in out
    code, out, _ = run_main(capsys, "construct", "--family", "complete_bipartite",
                            "--n", "3", "--k", "3", "--out", "csv")
    assert code == 0
    assert out.splitlines()[0] == "family,n,m,graph6"
    assert out.splitlines()[1].startswith("complete_bipartite,6,9,")


def test_spectral_from_stdin(capsys, monkeypatch):
    line = graph6_encode(s_nk(5, 2))
    monkeypatch.setattr("sys.stdin", __import__("io").StringIO(line + "\n"))
    code, out, _ = run_main(capsys, "spectral", "--g6", "-", "--tol", "1e-12")
    assert code == 0
    obj = json.loads(out)
    assert obj["lambda"] == pytest.approx(3.0, abs=1e-9)
    assert obj["n"] == 5
    assert len(obj["perron"]) == 5


def test_check_free(capsys, tmp_path):
    f = tmp_path / "graphs.g6"
    f.write_text(graph6_encode(s_nk_plus(20, 2)) + "\n" + graph6_encode(path_graph(6)) + "\n")
    code, out, _ = run_main(capsys, "check-free", "--g6", str(f), "--k", "2", "--even-only")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["free"] is True and rows[1]["free"] is True
    code, out, _ = run_main(capsys, "check-free", "--g6", str(f), "--forbid", "C3,C4")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["free"] is False and len(rows[0]["witness"]) == 3


def test_forbid_expansion_equivalent(capsys):
    code1, out1, _ = run_main(capsys, "extremal", "--n", "5", "--k", "2", "--even-only",
                              "--objective", "edges", "--format", "json")
    code2, out2, _ = run_main(capsys, "extremal", "--n", "5", "--forbid", "C6",
                              "--objective", "edges", "--format", "json")
    assert code1 == code2 == 0
    a, b = json.loads(out1), json.loads(out2)
    a.pop("seconds"), b.pop("seconds")
    assert a == b
    assert a["family"] == "C6"


def test_extremal_csv(capsys):
    code, out, _ = run_main(capsys, "extremal", "--n", "5", "--forbid", "C4",
                            "--objective", "edges", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "n,family,objective,best_value,num_argmax,graphs_scanned,seconds"
    assert row.startswith('5,"C4",edges,6,')


def test_extremal_determinism_modulo_seconds(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run_main(capsys, "extremal", "--n", "6", "--forbid", "C3",
                             "--objective", "lambda", "--format", "json")
        obj = json.loads(out)
        obj.pop("seconds")
        outs.append(json.dumps(obj, sort_keys=True))
    assert outs[0] == outs[1]


def test_extremal_argmax_roundtrip(capsys):
    _, out, _ = run_main(capsys, "extremal", "--n", "6", "--forbid", "C3",
                         "--objective", "edges", "--format", "json")
    obj = json.loads(out)
    for line in obj["argmax"]:
        g = graph6_decode(line)
        assert g.n == 6
        assert graph6_encode(g) == line


def test_search_deterministic_output(capsys):
    args = ("search", "--n", "8", "--forbid", "C6", "--seed", "5", "--max-iters", "60")
    _, out1, _ = run_main(capsys, *args)
    _, out2, _ = run_main(capsys, *args)
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["iterations"] == 60 and obj["seed"] == 5
    g = graph6_decode(obj["final_graph"])
    assert g.n == 8
    code, out, _ = run_main(capsys, *args, "--format", "table")
    assert code == 0 and "final_lambda" in out


def test_audit_exit_codes(capsys, tmp_path):
    f = tmp_path / "p5.g6"
    f.write_text(graph6_encode(path_graph(5)) + "\n")
    code, out, _ = run_main(capsys, "audit", "--g6", str(f), "--k", "2",
                            "--mode", "even-only", "--certified")
    assert code == 4
    code, out, _ = run_main(capsys, "audit", "--g6", str(f), "--k", "2",
                            "--mode", "even-only")
    assert code == 0
    code, out, _ = run_main(capsys, "audit", "--g6", str(f), "--k", "2",
                            "--format", "table")
    assert code == 0 and "overall: PASS" in out


def test_audit_check_filter_and_threads(capsys, tmp_path):
    f = tmp_path / "c5.g6"
    f.write_text(graph6_encode(s_nk_plus(12, 2)) + "\n")
    code, out, _ = run_main(capsys, "audit", "--g6", str(f), "--k", "2",
                            "--checks", "degree-powers", "--threads", "2")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert {r["check"] for r in rows} == {"degree-powers"}


def test_parameter_error_exit_2(capsys):
    code, _, err = run_main(capsys, "construct", "--family", "s_nk", "--n", "3", "--k", "3")
    assert code == 2 and "parameter error" in err
    code, _, err = run_main(capsys, "check-free", "--g6", "-", )
    assert code == 2
    code, _, err = run_main(capsys, "extremal", "--n", "12", "--forbid", "C6",
                            "--objective", "edges")
    assert code == 2 and "capped" in err


def test_data_error_exit_3(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", __import__("io").StringIO("B\x01\n"))
    code, _, err = run_main(capsys, "spectral", "--g6", "-")
    assert code == 3 and "offset" in err
    code, _, err = run_main(capsys, "spectral", "--g6", "/nonexistent/file.g6")
    assert code == 3


def test_console_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "spex.cli", "construct", "--family", "s_nk",
         "--n", "10", "--k", "3"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert graph6_decode(result.stdout.strip()) == s_nk(10, 3)
    result = subprocess.run(
        [sys.executable, "-m", "spex.cli", "construct", "--family", "s_nk", "--n", "1", "--k", "5"],
        capture_output=True, text=True,
    )
    assert result.returncode == 2
