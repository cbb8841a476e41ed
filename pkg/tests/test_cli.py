"""Command-line behaviour: exit codes, JSON shape, determinism."""

from __future__ import annotations

import json

from mckay.bgp import QuiverRep
from mckay.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_graph_command(capsys):
    code, out, _ = run(capsys, "graph", "2T")
    assert code == 0
    doc = json.loads(out)
    assert doc["graph"]["type"] == "E6~"
    assert len(doc["graph"]["n"]) == 7
    assert doc["graph"]["delta"] == [1, 1, 1, 2, 2, 2, 3]


def test_group_and_chartab_commands(capsys):
    code, out, _ = run(capsys, "group", "bd:2")
    assert code == 0
    assert json.loads(out)["group"]["order"] == 8
    code, out, _ = run(capsys, "chartab", "bd:2")
    assert code == 0
    doc = json.loads(out)
    assert doc["chartab"]["dims"] == [1, 1, 1, 1, 2]


def test_koszul_check_passes(capsys):
    code, out, _ = run(capsys, "koszul-check", "cyclic:2")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"][0]["pass"] is True
    assert "statement" in doc["checks"][0]


def test_heights_precondition_error(capsys):
    code, _, err = run(capsys, "heights", "cyclic:3")
    assert code == 2
    assert json.loads(err)["kind"] == "precondition"


def test_bad_descriptor_is_usage_error(capsys):
    code, _, err = run(capsys, "graph", "nonsense")
    assert code == 2


def test_degree_and_window_guards(capsys):
    code, _, err = run(capsys, "molien", "cyclic:2", "--max-degree", "40")
    assert code == 2
    code, _, err = run(capsys, "heights", "cyclic:2", "--window", "9")
    assert code == 2


def test_json_output_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "lattice-check", "cyclic:2", "--seed", "3")
    code2, out2, _ = run(capsys, "lattice-check", "cyclic:2", "--seed", "3")
    assert code1 == code2 == 0
    assert out1 == out2


def test_kirillov_and_ext_checks(capsys):
    code, out, _ = run(capsys, "kirillov-check", "cyclic:4", "--all-heights")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["checks"]) == 6
    code, out, _ = run(capsys, "ext-check", "bd:2", "--height", "0,0,0,0,1")
    assert code == 0


def test_paths_command(capsys):
    code, out, _ = run(capsys, "paths", "cyclic:2", "--height", "0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["paths"][1][0] == 2
    assert doc["sinks"] == [0] and doc["sources"] == [1]


def test_invalid_height_literal(capsys):
    code, _, err = run(capsys, "paths", "cyclic:2", "--height", "0,2")
    assert code == 2


def test_preproj_and_hilbert_match(capsys):
    code, out, _ = run(capsys, "preproj", "cyclic:2", "--max-degree", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["graded_dims"]["dims"][0] == [[1, 0], [0, 1]]
    code, out, _ = run(capsys, "hilbert-match", "cyclic:2", "--height", "0,1")
    assert code == 0
    assert all(c["pass"] for c in json.loads(out)["checks"])


def test_reflect_round_trip_through_files(tmp_path, capsys):
    rep = {
        "dims": [2, 1],
        "arrows": [
            {"from": 1, "to": 0, "index": 0, "matrix": [["1/1"], ["0/1"]]},
            {"from": 1, "to": 0, "index": 1, "matrix": [["0/1"], ["1/1"]]},
        ],
    }
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "reflect", "--rep", str(path),
                       "--vertex", "0", "--dir", "plus")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["dims"] == [0, 1]
    QuiverRep.from_json(doc["result"])  # parses back


def test_table_output_mode(capsys):
    code, out, _ = run(capsys, "koszul-check", "cyclic:3", "--output", "table")
    assert code == 0
    assert out.startswith("PASS")


def test_lattice_check_single_height(capsys):
    code, out, _ = run(capsys, "lattice-check", "bd:2", "--height", "0,0,0,0,1")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert any(name.startswith("lattice/weyl") for name in names)


def test_all_command_runs_the_battery(capsys):
    code, out, _ = run(capsys, "all")
    assert code == 0
    doc = json.loads(out)
    names = {c["name"] for c in doc["checks"]}
    assert len(doc["checks"]) == 9
    assert "ade-classification" in names and "twist-lattice-suite" in names
    assert all(c["pass"] for c in doc["checks"])
