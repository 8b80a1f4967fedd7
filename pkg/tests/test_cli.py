import csv
import json
import subprocess
import sys

import pytest

from tokendom.cli import CSV_HEADER, main, parse_range
from tokendom.errors import InvalidParameterError
from tokendom.formats import graph_from_json, vertex_set_from_json


def run(argv, capsys):
    rc = main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("6,14,18") == [6, 14, 18]
    assert parse_range("2..3,9") == [2, 3, 9]
    with pytest.raises(InvalidParameterError):
        parse_range("a..b")


def test_build_dot(capsys):
    rc, out, err = run(["build", "star", "5", "2", "--format", "dot"], capsys)
    assert rc == 0
    assert out.count("label=") == 15 and out.count(" -- ") == 20
    assert '[label="{0,1}"]' in out
    assert "15 vertices, 20 edges" in err


def test_build_json_roundtrip(tmp_path, capsys):
    path = tmp_path / "g.json"
    rc, out, _ = run(["build", "complete", "4", "2", "--out", str(path)], capsys)
    assert rc == 0
    data = json.loads(path.read_text())
    assert data["family"] == "complete" and data["n"] == 4 and data["k"] == 2
    assert len(data["vertices"]) == 6 and len(data["edges"]) == 12
    g = graph_from_json(data)
    assert len(g) == 6 and set(g.degrees()) == {4}


def test_build_over_budget(capsys):
    rc, _, err = run(["build", "star", "30", "15", "--format", "json"], capsys)
    assert rc == 3 and "--budget-vertices" in err


def test_build_bad_k(capsys):
    rc, _, _ = run(["build", "star", "3", "9"], capsys)
    assert rc == 2


@pytest.mark.parametrize("argv,summary", [
    (["gamma", "star", "6", "2", "--method", "exact"], "star 6 2 exact 5 optimal"),
    (["gamma", "complete", "8", "2", "--method", "construction"], "complete 8 2 construction 4 verified"),
    (["gamma", "complete", "14", "3", "--method", "construction"], "complete 14 3 construction 14 optimal"),
])
def test_gamma_summary(tmp_path, capsys, argv, summary):
    out_file = tmp_path / "cert.json"
    rc, out, _ = run(argv + ["--out", str(out_file)], capsys)
    assert rc == 0
    assert out.strip() == summary
    cert = json.loads(out_file.read_text())
    assert cert["size"] == int(summary.split()[4]) and cert["verified"]


def test_gamma_solver_budget_exit(tmp_path, capsys):
    out_file = tmp_path / "cert.json"
    rc, _, _ = run(["gamma", "complete", "9", "3", "--method", "exact", "--solver-nodes", "3",
                    "--out", str(out_file)], capsys)
    assert rc == 3
    cert = json.loads(out_file.read_text())
    assert cert["optimal"] is False and cert["verified"] is True


def test_gamma_greedy(capsys):
    rc, out, err = run(["gamma", "complete", "6", "2", "--method", "greedy"], capsys)
    assert rc == 0 and json.loads(out)["size"] >= 3


def _table(argv, capsys):
    rc, out, _ = run(["table"] + argv + ["--no-timing"], capsys)
    assert rc == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert out.splitlines()[0] == ",".join(CSV_HEADER)
    return rows


def test_table_star_f2(capsys):
    rows = _table(["star-f2", "--n", "2..8"], capsys)
    assert [int(r["exact_gamma"]) for r in rows] == [n - 1 for n in range(2, 9)]


def test_table_complete_f3(capsys):
    rows = _table(["complete-f3", "--n", "6,14,18"], capsys)
    assert [int(r["size"]) for r in rows] == [2, 14, 24]
    assert [int(r["exact_gamma"]) for r in rows] == [2, 14, 24]


def test_table_complete_fk(capsys):
    (row,) = _table(["complete-fk", "--n", "7", "--k", "3"], capsys)
    assert int(row["lower"]) < int(row["size"]) <= int(row["upper"])


def test_table_rows_ordered(capsys):
    rows = _table(["star-fk", "--n", "6..9", "--k", "3", "--timeout-ms", "2000"], capsys)
    for r in rows:
        assert int(r["lower"]) <= int(r["size"])
        if r["exact_gamma"]:
            assert int(r["lower"]) <= int(r["exact_gamma"]) <= int(r["size"])


def test_table_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["table", "complete-f2", "--n", "2..8", "--no-timing", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gamma_and_cover_deterministic(tmp_path):
    for argv in (["gamma", "star", "8", "3"], ["gamma", "complete", "7", "3", "--method", "exact"],
                 ["cover", "10", "3", "2"], ["build", "star", "4", "2", "--format", "dot"]):
        outs = []
        for name in ("x", "y"):
            path = tmp_path / name
            main(argv + ["--out", str(path)])
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


@pytest.fixture
def f2s4_graph(tmp_path):
    path = tmp_path / "g.json"
    assert main(["build", "star", "4", "2", "--out", str(path)]) == 0
    return path


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_verify_construction(tmp_path, f2s4_graph, capsys):
    s = _write(tmp_path, "d.json", [[0, 3], [0, 4], [1, 2]])
    rc, out, _ = run(["verify", str(f2s4_graph), s], capsys)
    assert rc == 0


def test_verify_empty_set(tmp_path, f2s4_graph, capsys):
    rc, out, _ = run(["verify", str(f2s4_graph), _write(tmp_path, "d.json", [])], capsys)
    assert rc == 1 and "[0, 1]" in out


def test_verify_alien_vertex(tmp_path, f2s4_graph, capsys):
    rc, _, _ = run(["verify", str(f2s4_graph), _write(tmp_path, "d.json", [[0, 9]])], capsys)
    assert rc == 2


def test_verify_parse_failure(tmp_path, f2s4_graph, capsys):
    rc, _, _ = run(["verify", str(f2s4_graph), _write(tmp_path, "d.json", "{nope")], capsys)
    assert rc == 2
    rc, _, _ = run(["verify", _write(tmp_path, "g.json", {"vertices": [[1]]}),
                    _write(tmp_path, "e.json", [])], capsys)
    assert rc == 2


@pytest.mark.parametrize("argv", [
    ["star", "6", "2", "--method", "exact"], ["star", "8", "3"], ["star", "10", "4"],
    ["complete", "9", "2"], ["complete", "10", "3"], ["complete", "8", "4"],
    ["complete", "7", "3", "--method", "greedy"],
])
def test_certificates_reverify(tmp_path, capsys, argv):
    cert, graph = tmp_path / "c.json", tmp_path / "g.json"
    assert main(["gamma"] + argv + ["--out", str(cert)]) == 0
    assert main(["build"] + argv[:3] + ["--out", str(graph)]) == 0
    capsys.readouterr()
    rc, out, _ = run(["verify", str(graph), str(cert)], capsys)
    assert rc == 0, out


def test_cover_auto_sts(capsys):
    rc, out, err = run(["cover", "7", "3", "2", "--method", "auto"], capsys)
    assert rc == 0 and len(json.loads(out)["blocks"]) == 7
    assert "blocks=7 lower_bound=7" in err


def test_cover_bose(capsys):
    rc, out, _ = run(["cover", "9", "3", "2", "--method", "bose"], capsys)
    data = json.loads(out)
    assert rc == 0 and len(data["blocks"]) == 12 and data["exact"] is True


def test_cover_greedy(tmp_path, capsys):
    path = tmp_path / "d.txt"
    rc, out, _ = run(["cover", "8", "3", "2", "--method", "greedy", "--format", "text",
                      "--out", str(path)], capsys)
    lines = path.read_text().splitlines()
    assert rc == 0 and len(lines) >= 10 and "lower_bound=10" in out


@pytest.mark.parametrize("argv", [["13", "3", "2", "--method", "bose"],
                                  ["9", "3", "2", "--method", "skolem"],
                                  ["9", "4", "2", "--method", "bose"],
                                  ["5", "5", "2"]])
def test_cover_mismatch(capsys, argv):
    rc, _, _ = run(["cover"] + argv, capsys)
    assert rc == 2


def test_vertex_set_accepts_certificate_object():
    assert vertex_set_from_json({"set": [[2, 1]]}) == [(1, 2)]
    with pytest.raises(InvalidParameterError):
        vertex_set_from_json({"nope": 1})


def test_unknown_command_is_input_error(capsys):
    assert main(["frobnicate"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tokendom", "gamma", "complete", "6", "3",
                           "--method", "exact"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stderr.strip() == "complete 6 3 exact 2 optimal"
